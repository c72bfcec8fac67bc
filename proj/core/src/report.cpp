#include "obstructor/report.hpp"

#include <sstream>

#include <json.hpp>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

using json = nlohmann::ordered_json;

json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  return Integer(j.get<std::string>());
}

json descriptor_json(const FieldDescriptor& d) {
  json out;
  out["p"] = d.p;
  json f = json::array();
  for (const auto& c : d.unramified_poly) f.push_back(integer_json(c));
  out["f_poly"] = f;
  json e = json::array();
  for (const auto& c : d.eisenstein_poly) {
    json v = json::array();
    for (const auto& x : c) v.push_back(integer_json(x));
    e.push_back(v);
  }
  out["e_poly"] = e;
  return out;
}

FieldDescriptor descriptor_from(const json& j) {
  FieldDescriptor d;
  d.p = j.at("p").get<std::int64_t>();
  for (const auto& c : j.at("f_poly")) d.unramified_poly.push_back(integer_from(c));
  for (const auto& c : j.at("e_poly")) {
    std::vector<Integer> v;
    for (const auto& x : c) v.push_back(integer_from(x));
    d.eisenstein_poly.push_back(std::move(v));
  }
  return d;
}

Place place_from(const json& j) { return Place::parse(j.get<std::string>()); }

json record_json(const EvaluationRecord& r) {
  json out;
  out["place"] = r.place.to_string();
  out["field"] = r.field ? descriptor_json(*r.field) : json();
  out["field_name"] = r.field_name;
  out["point"] = r.point;
  out["value"] = r.value.to_string();
  out["path"] = r.path;
  out["representative"] = r.representative;
  return out;
}

EvaluationRecord record_from(const json& j) {
  EvaluationRecord r;
  r.place = place_from(j.at("place"));
  if (!j.at("field").is_null()) r.field = descriptor_from(j.at("field"));
  r.field_name = j.at("field_name").get<std::string>();
  r.point = j.at("point").get<std::string>();
  r.value = QmodZ::parse(j.at("value").get<std::string>());
  r.path = j.at("path").get<std::string>();
  r.representative = j.at("representative").get<std::size_t>();
  return r;
}

json observation_json(const FieldObservation& f) {
  json out;
  out["field"] = f.field;
  out["descriptor"] = f.descriptor ? descriptor_json(*f.descriptor) : json();
  out["degree"] = f.degree;
  json values = json::array();
  for (const auto& v : f.values) values.push_back(v.to_string());
  out["values"] = values;
  json ex = json::array();
  for (const auto& r : f.exemplars) ex.push_back(record_json(r));
  out["exemplars"] = ex;
  out["evaluations"] = f.evaluations;
  out["explicit_points"] = f.explicit_points;
  out["embedded_points"] = f.embedded_points;
  out["skipped"] = f.skipped;
  out["inconclusive"] = f.inconclusive;
  out["shortfall"] = f.shortfall;
  out["certified_empty"] = f.certified_empty;
  return out;
}

FieldObservation observation_from(const json& j) {
  FieldObservation f;
  f.field = j.at("field").get<std::string>();
  if (!j.at("descriptor").is_null()) f.descriptor = descriptor_from(j.at("descriptor"));
  f.degree = j.at("degree").get<int>();
  for (const auto& v : j.at("values")) f.values.push_back(QmodZ::parse(v.get<std::string>()));
  for (const auto& r : j.at("exemplars")) f.exemplars.push_back(record_from(r));
  f.evaluations = j.at("evaluations").get<std::size_t>();
  f.explicit_points = j.at("explicit_points").get<std::size_t>();
  f.embedded_points = j.at("embedded_points").get<std::size_t>();
  f.skipped = j.at("skipped").get<std::size_t>();
  f.inconclusive = j.at("inconclusive").get<std::size_t>();
  f.shortfall = j.at("shortfall").get<bool>();
  f.certified_empty = j.at("certified_empty").get<bool>();
  return f;
}

json profile_json(const PlaceProfile& p) {
  json out;
  out["place"] = p.place.to_string();
  out["status"] = std::string(to_string(p.status));
  out["c_v"] = p.c_v ? json(p.c_v->to_string()) : json();
  out["reason"] = p.reason;
  out["degree_bound"] = p.degree_bound;
  out["samples"] = p.samples;
  out["base_witness"] = p.base_witness ? json(*p.base_witness) : json();
  json pair = json::array();
  for (const auto& r : p.witness_pair) pair.push_back(record_json(r));
  out["witness_pair"] = pair;
  out["restriction_checks"] = p.restriction_checks;
  out["restriction_failures"] = p.restriction_failures;
  json fields = json::array();
  for (const auto& f : p.fields) fields.push_back(observation_json(f));
  out["fields"] = fields;
  return out;
}

PlaceProfile profile_from(const json& j) {
  PlaceProfile p;
  p.place = place_from(j.at("place"));
  p.status = parse_profile_status(j.at("status").get<std::string>());
  if (!j.at("c_v").is_null()) p.c_v = QmodZ::parse(j.at("c_v").get<std::string>());
  p.reason = j.at("reason").get<std::string>();
  p.degree_bound = j.at("degree_bound").get<int>();
  p.samples = j.at("samples").get<std::size_t>();
  if (!j.at("base_witness").is_null()) p.base_witness = j.at("base_witness").get<std::string>();
  for (const auto& r : j.at("witness_pair")) p.witness_pair.push_back(record_from(r));
  p.restriction_checks = j.at("restriction_checks").get<std::size_t>();
  p.restriction_failures = j.at("restriction_failures").get<std::size_t>();
  for (const auto& f : j.at("fields")) p.fields.push_back(observation_from(f));
  return p;
}

json places_json(const std::vector<Place>& places) {
  json out = json::array();
  for (const auto& p : places) out.push_back(p.to_string());
  return out;
}

json adelic_json(const AdelicProfile& a) {
  json out;
  out["class"] = a.class_name;
  out["a"] = a.a ? json(a.a->to_string()) : json();
  out["blocking_place"] = a.blocking_place ? json(a.blocking_place->to_string()) : json();
  out["blocking_reason"] = a.blocking_reason;
  out["declared_bad_places"] = places_json(a.declared_bad_places);
  out["good_place_assumption"] = a.good_place_assumption;
  json profiles = json::array();
  for (const auto& p : a.profiles) profiles.push_back(profile_json(p));
  out["profiles"] = profiles;
  return out;
}

AdelicProfile adelic_from(const json& j) {
  AdelicProfile a;
  a.class_name = j.at("class").get<std::string>();
  if (!j.at("a").is_null()) a.a = QmodZ::parse(j.at("a").get<std::string>());
  if (!j.at("blocking_place").is_null()) a.blocking_place = place_from(j.at("blocking_place"));
  a.blocking_reason = j.at("blocking_reason").get<std::string>();
  for (const auto& p : j.at("declared_bad_places")) a.declared_bad_places.push_back(place_from(p));
  a.good_place_assumption = j.at("good_place_assumption").get<bool>();
  for (const auto& p : j.at("profiles")) a.profiles.push_back(profile_from(p));
  return a;
}

json verdict_json(const Verdict& v) {
  json out;
  out["degree"] = v.degree;
  out["outcome"] = std::string(to_string(v.outcome));
  out["reason"] = v.reason;
  out["witness_place"] = v.witness_place ? json(v.witness_place->to_string()) : json();
  out["trace"] = v.trace;
  return out;
}

Verdict verdict_from(const json& j) {
  Verdict v;
  v.degree = j.at("degree").get<int>();
  v.outcome = parse_outcome(j.at("outcome").get<std::string>());
  v.reason = j.at("reason").get<std::string>();
  if (!j.at("witness_place").is_null()) v.witness_place = place_from(j.at("witness_place"));
  v.trace = j.at("trace").get<std::vector<std::string>>();
  return v;
}

json report_json(const ObstructionReport& r, bool include_timing) {
  json out;
  out["scenario"] = r.scenario;
  out["command"] = r.command;
  out["seed"] = r.seed;
  out["aborted"] = r.aborted;
  out["abort_reason"] = r.abort_reason;
  json rows = json::array();
  for (const auto& s : r.solvability) {
    json row;
    row["place"] = s.place.to_string();
    row["outcome"] = s.outcome;
    row["required"] = s.required;
    row["depth"] = s.depth;
    row["visited"] = s.visited;
    row["witness"] = s.witness;
    row["reason"] = s.reason;
    rows.push_back(row);
  }
  out["solvability"] = rows;
  json classes = json::array();
  for (const auto& c : r.classes) {
    json cj;
    cj["name"] = c.name;
    cj["a"] = c.a;
    cj["origin"] = c.origin;
    cj["profile"] = adelic_json(c.profile);
    json vs = json::array();
    for (const auto& v : c.verdicts) vs.push_back(verdict_json(v));
    cj["verdicts"] = vs;
    json gs = json::array();
    for (const auto& g : c.good_places) {
      gs.push_back(json{{"place", g.place.to_string()}, {"evaluations", g.evaluations}, {"nonzero", g.nonzero}});
    }
    cj["good_places"] = gs;
    cj["coherence_points"] = c.coherence_points;
    cj["coherence_mismatches"] = c.coherence_mismatches;
    cj["global_point_checks"] = c.global_point_checks;
    classes.push_back(cj);
  }
  out["classes"] = classes;
  out["assumptions"] = r.assumptions;
  json ex = json::array();
  for (const auto& e : r.expectations) {
    ex.push_back(json{{"item", e.item}, {"expected", e.expected}, {"observed", e.observed}, {"ok", e.ok}});
  }
  out["expectations"] = ex;
  if (include_timing) out["timing_seconds"] = r.timing_seconds;
  return out;
}

}  // namespace

std::string serialize_report(const ObstructionReport& report, bool include_timing) {
  return report_json(report, include_timing).dump(2) + "\n";
}

ObstructionReport parse_report(std::string_view text) {
  try {
    const json j = json::parse(text.begin(), text.end());
    ObstructionReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.aborted = j.at("aborted").get<bool>();
    r.abort_reason = j.at("abort_reason").get<std::string>();
    for (const auto& s : j.at("solvability")) {
      SolvabilityRow row;
      row.place = place_from(s.at("place"));
      row.outcome = s.at("outcome").get<std::string>();
      row.required = s.at("required").get<bool>();
      row.depth = s.at("depth").get<int>();
      row.visited = s.at("visited").get<std::uint64_t>();
      row.witness = s.at("witness").get<std::string>();
      row.reason = s.at("reason").get<std::string>();
      r.solvability.push_back(std::move(row));
    }
    for (const auto& cj : j.at("classes")) {
      ClassReport c;
      c.name = cj.at("name").get<std::string>();
      c.a = cj.at("a").get<std::string>();
      c.origin = cj.at("origin").get<std::string>();
      c.profile = adelic_from(cj.at("profile"));
      for (const auto& v : cj.at("verdicts")) c.verdicts.push_back(verdict_from(v));
      for (const auto& g : cj.at("good_places")) {
        c.good_places.push_back(
            {place_from(g.at("place")), g.at("evaluations").get<std::size_t>(), g.at("nonzero").get<std::size_t>()});
      }
      c.coherence_points = cj.at("coherence_points").get<std::size_t>();
      c.coherence_mismatches = cj.at("coherence_mismatches").get<std::size_t>();
      c.global_point_checks = cj.at("global_point_checks").get<std::vector<std::string>>();
      r.classes.push_back(std::move(c));
    }
    r.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    for (const auto& e : j.at("expectations")) {
      r.expectations.push_back({e.at("item").get<std::string>(), e.at("expected").get<std::string>(),
                                e.at("observed").get<std::string>(), e.at("ok").get<bool>()});
    }
    if (j.contains("timing_seconds")) r.timing_seconds = j.at("timing_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
}

std::string render_text(const ObstructionReport& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << " (" << r.command << ", seed " << r.seed << ")\n";
  if (!r.solvability.empty()) {
    out << "\nlocal solvability\n";
    for (const auto& s : r.solvability) {
      out << "  " << s.place.to_string() << (s.required ? "*" : "") << "\t" << s.outcome;
      if (!s.witness.empty()) out << "\t" << s.witness;
      if (!s.reason.empty()) out << "\t(" << s.reason << ")";
      out << "\n";
    }
  }
  if (r.aborted) out << "\naborted: " << r.abort_reason << "\n";
  for (const auto& c : r.classes) {
    out << "\nclass " << c.name << " = (" << c.a << ", h), " << c.origin << "\n";
    for (const auto& p : c.profile.profiles) {
      out << "  place " << p.place.to_string() << ": " << to_string(p.status);
      if (p.c_v) out << " c_v = " << p.c_v->to_string();
      out << " (" << p.reason << ")\n";
      for (const auto& f : p.fields) {
        out << "    " << f.field << "\t[";
        for (std::size_t i = 0; i < f.values.size(); ++i) out << (i ? ", " : "") << f.values[i].to_string();
        out << "] from " << f.evaluations << " points";
        if (f.explicit_points) out << ", " << f.explicit_points << " given";
        if (f.skipped) out << ", " << f.skipped << " skipped";
        if (f.inconclusive) out << ", " << f.inconclusive << " inconclusive";
        if (f.certified_empty) out << ", no points";
        out << "\n";
      }
      for (const auto& w : p.witness_pair) {
        out << "    witness " << w.field_name << " " << w.point << " -> " << w.value.to_string() << "\n";
      }
    }
    if (c.profile.a) {
      out << "  a = " << c.profile.a->to_string() << "\n";
    } else {
      out << "  no adelic constant: " << c.profile.blocking_reason << "\n";
    }
    for (const auto& v : c.verdicts) out << "  d = " << v.degree << ": " << to_string(v.outcome) << "\n";
    for (const auto& g : c.good_places) {
      out << "  good place " << g.place.to_string() << ": " << g.nonzero << " nonzero of " << g.evaluations << "\n";
    }
    if (c.coherence_points) {
      out << "  pullback coherence: " << c.coherence_mismatches << " mismatches in " << c.coherence_points << "\n";
    }
    for (const auto& g : c.global_point_checks) out << "  global point " << g << "\n";
  }
  if (!r.assumptions.empty()) {
    out << "\nassumptions\n";
    for (const auto& a : r.assumptions) out << "  " << a << "\n";
  }
  if (!r.expectations.empty()) {
    out << "\nexpectations\n";
    for (const auto& e : r.expectations) {
      out << "  " << (e.ok ? "ok  " : "FAIL") << " " << e.item << ": expected " << e.expected << ", observed "
          << e.observed << "\n";
    }
  }
  return out.str();
}

}  // namespace obstructor
