#include "obstructor/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "obstructor/errors.hpp"
#include "obstructor/extensions.hpp"

namespace obstructor {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& catalog_entries();
}

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Integer as_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  fail(where, "expected an integer");
}

Rational as_rational(const json& j, const std::string& where) {
  std::string text;
  if (j.is_number_integer()) {
    text = std::to_string(j.get<std::int64_t>());
  } else if (j.is_string()) {
    text = j.get<std::string>();
  } else {
    fail(where, "expected a rational as an integer or a \"num/den\" string");
  }
  try {
    Rational r(text);
    if (r.get_den() == 0) fail(where, "zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(where, "malformed rational '" + text + "'");
  }
}

Place as_place(const json& j, const std::string& where) {
  std::string text = j.is_number_integer() ? std::to_string(j.get<std::int64_t>()) : as_string(j, where);
  try {
    return Place::parse(text);
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError& e) {
    throw SchemaError(where + ": " + e.what());
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

VarietyModel parse_variety(const json& j, const std::string& where, const std::string& name) {
  const std::string ambient = as_string(need(j, "ambient", where), where + ".ambient");
  if (ambient != "projective" && ambient != "affine") fail(where + ".ambient", "expected projective or affine");
  const auto vars = string_list(need(j, "variables", where), where + ".variables");
  const auto eqs = j.contains("equations") ? string_list(j["equations"], where + ".equations")
                                           : std::vector<std::string>{};
  const auto opens = j.contains("open_conditions") ? string_list(j["open_conditions"], where + ".open_conditions")
                                                   : std::vector<std::string>{};
  std::vector<int> weights;
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) fail(where + ".weights", "expected an array");
    for (std::size_t i = 0; i < j["weights"].size(); ++i) {
      weights.push_back(static_cast<int>(as_int(j["weights"][i], where + ".weights[" + std::to_string(i) + "]")));
    }
  }
  VarietyModel m = guarded(where, [&] {
    VarietyModel v;
    v.name = name;
    v.ambient = ambient == "projective" ? Ambient::Projective : Ambient::Affine;
    v.variables = vars;
    v.weights = v.is_projective() && !weights.empty() ? weights : std::vector<int>(vars.size(), 1);
    if (!v.is_projective() && !weights.empty()) fail(where + ".weights", "affine models take no weights");
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      v.equations.push_back(guarded(where + ".equations[" + std::to_string(i) + "]",
                                    [&] { return MultiPolynomial::parse(eqs[i], vars); }));
    }
    for (std::size_t i = 0; i < opens.size(); ++i) {
      v.open_conditions.push_back(guarded(where + ".open_conditions[" + std::to_string(i) + "]",
                                          [&] { return MultiPolynomial::parse(opens[i], vars); }));
    }
    v.validate();
    return v;
  });
  if (j.contains("bad_places")) {
    if (!j["bad_places"].is_array()) fail(where + ".bad_places", "expected an array");
    std::set<Place> seen;
    for (std::size_t i = 0; i < j["bad_places"].size(); ++i) {
      seen.insert(as_place(j["bad_places"][i], where + ".bad_places[" + std::to_string(i) + "]"));
    }
    m.bad_places.assign(seen.begin(), seen.end());
  }
  return m;
}

FieldDescriptor parse_descriptor(const json& j, const std::string& where) {
  FieldDescriptor d;
  d.p = as_int(need(j, "p", where), where + ".p");
  if (d.p < 2 || !is_prime(d.p)) fail(where + ".p", std::to_string(d.p) + " is not prime");
  if (j.contains("f_poly")) {
    if (!j["f_poly"].is_array()) fail(where + ".f_poly", "expected an array");
    for (std::size_t i = 0; i < j["f_poly"].size(); ++i) {
      d.unramified_poly.push_back(as_integer(j["f_poly"][i], where + ".f_poly[" + std::to_string(i) + "]"));
    }
  } else {
    d.unramified_poly = {Integer(-1), Integer(1)};
  }
  const json& e = need(j, "e_poly", where);
  if (!e.is_array()) fail(where + ".e_poly", "expected an array");
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string at = where + ".e_poly[" + std::to_string(i) + "]";
    std::vector<Integer> coeff;
    if (e[i].is_array()) {
      for (std::size_t k = 0; k < e[i].size(); ++k) coeff.push_back(as_integer(e[i][k], at));
    } else {
      coeff.push_back(as_integer(e[i], at));
    }
    coeff.resize(static_cast<std::size_t>(std::max(d.f(), 1)), Integer(0));
    d.eisenstein_poly.push_back(std::move(coeff));
  }
  guarded(where, [&] { return LocalField::build(d).degree(); });
  return d;
}

RationalFunctionClass parse_function(const json& j, const VarietyModel& on, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of [numerator, denominator] pairs");
  std::vector<std::pair<std::string, std::string>> quotients;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (j[i].is_string()) {
      quotients.emplace_back(j[i].get<std::string>(), "1");
    } else if (j[i].is_array() && j[i].size() == 2) {
      quotients.emplace_back(as_string(j[i][0], at + "[0]"), as_string(j[i][1], at + "[1]"));
    } else {
      fail(at, "expected [numerator, denominator]");
    }
  }
  return guarded(where, [&] {
    RationalFunctionClass h = RationalFunctionClass::parse(quotients, on.variables);
    h.validate(on);
    return h;
  });
}

ExpectedBlock parse_expected(const json& j, const std::string& where) {
  ExpectedBlock out;
  if (!j.is_object()) fail(where, "expected an object");
  if (j.contains("solvability")) {
    for (const auto& [k, v] : j["solvability"].items()) out.solvability[k] = as_string(v, where + ".solvability." + k);
  }
  if (j.contains("profiles")) {
    for (const auto& [cls, places] : j["profiles"].items()) {
      for (const auto& [k, v] : places.items()) {
        out.profiles[cls][k] = as_string(v, where + ".profiles." + cls + "." + k);
      }
    }
  }
  if (j.contains("sums")) {
    for (const auto& [k, v] : j["sums"].items()) out.sums[k] = as_string(v, where + ".sums." + k);
  }
  if (j.contains("verdicts")) {
    for (const auto& [cls, degrees] : j["verdicts"].items()) {
      for (const auto& [k, v] : degrees.items()) {
        const std::string at = where + ".verdicts." + cls + "." + k;
        int d = 0;
        try {
          d = std::stoi(k);
        } catch (const std::exception&) {
          fail(at, "degree keys must be integers");
        }
        const std::string outcome = as_string(v, at);
        guarded(at, [&] { return parse_outcome(outcome); });
        out.verdicts[cls][d] = outcome;
      }
    }
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) fail("document", "expected an object");
  Scenario s;
  s.name = as_string(need(doc, "name", "document"), "name");
  if (doc.contains("description")) s.description = as_string(doc["description"], "description");
  s.variety = parse_variety(need(doc, "variety", "document"), "variety", s.name);

  if (doc.contains("targets")) {
    for (const auto& [k, v] : doc["targets"].items()) s.targets[k] = parse_variety(v, "targets." + k, k);
  }
  if (doc.contains("morphisms")) {
    const json& ms = doc["morphisms"];
    if (!ms.is_array()) fail("morphisms", "expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string at = "morphisms[" + std::to_string(i) + "]";
      MorphismModel g;
      g.name = as_string(need(ms[i], "name", at), at + ".name");
      const std::string target = as_string(need(ms[i], "target", at), at + ".target");
      if (!s.targets.count(target)) fail(at + ".target", "unknown target '" + target + "'");
      g.source = s.variety;
      g.target = s.targets.at(target);
      const auto images = string_list(need(ms[i], "images", at), at + ".images");
      for (std::size_t k = 0; k < images.size(); ++k) {
        g.coordinate_polys.push_back(guarded(at + ".images[" + std::to_string(k) + "]", [&] {
          return MultiPolynomial::parse(images[k], s.variety.variables);
        }));
      }
      guarded(at, [&] {
        g.validate();
        return 0;
      });
      s.morphisms.push_back(std::move(g));
    }
  }
  if (doc.contains("classes")) {
    const json& cs = doc["classes"];
    if (!cs.is_array()) fail("classes", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string at = "classes[" + std::to_string(i) + "]";
      const std::string name = as_string(need(cs[i], "name", at), at + ".name");
      if (!names.insert(name).second) fail(at + ".name", "duplicate class '" + name + "'");
      const Rational a = as_rational(need(cs[i], "a", at), at + ".a");
      if (a == 0) fail(at + ".a", "must be nonzero");
      if (cs[i].contains("pullback")) {
        const std::string gname = as_string(cs[i]["pullback"], at + ".pullback");
        auto it = std::find_if(s.morphisms.begin(), s.morphisms.end(),
                               [&](const MorphismModel& g) { return g.name == gname; });
        if (it == s.morphisms.end()) fail(at + ".pullback", "unknown morphism '" + gname + "'");
        RationalFunctionClass h = parse_function(need(cs[i], "h", at), it->target, at + ".h");
        s.classes.push_back(guarded(at, [&] { return QuaternionClass::pulled_back(name, a, h, *it); }));
      } else {
        RationalFunctionClass h = parse_function(need(cs[i], "h", at), s.variety, at + ".h");
        s.classes.push_back(QuaternionClass::direct(name, a, std::move(h)));
      }
    }
  }
  if (doc.contains("scan")) {
    const json& sc = doc["scan"];
    if (!sc.is_array()) fail("scan", "expected an array");
    for (std::size_t i = 0; i < sc.size(); ++i) {
      const std::string at = "scan[" + std::to_string(i) + "]";
      PlaceScanSpec spec;
      spec.place = as_place(need(sc[i], "place", at), at + ".place");
      spec.degree_bound = sc[i].contains("degree_bound")
                              ? static_cast<int>(as_int(sc[i]["degree_bound"], at + ".degree_bound"))
                              : 1;
      if (spec.degree_bound < 1 || spec.degree_bound > kExtensionDegreeCap) {
        fail(at + ".degree_bound", "must lie in 1.." + std::to_string(kExtensionDegreeCap));
      }
      s.scans.push_back(spec);
    }
  }
  {
    std::set<Place> places(s.variety.bad_places.begin(), s.variety.bad_places.end());
    if (doc.contains("solvability")) {
      const json& sv = doc["solvability"];
      if (sv.contains("primes_up_to")) {
        const std::int64_t bound = as_int(sv["primes_up_to"], "solvability.primes_up_to");
        for (std::int64_t p = 2; p <= bound; ++p) {
          if (is_prime(p)) places.insert(Place::finite(Prime(p)));
        }
      }
      if (sv.contains("places")) {
        for (std::size_t i = 0; i < sv["places"].size(); ++i) {
          places.insert(as_place(sv["places"][i], "solvability.places[" + std::to_string(i) + "]"));
        }
      }
      if (sv.value("real", false)) places.insert(Place::real());
    }
    s.solvability_places.assign(places.begin(), places.end());
  }
  if (doc.contains("degrees")) {
    for (std::size_t i = 0; i < doc["degrees"].size(); ++i) {
      const int d = static_cast<int>(as_int(doc["degrees"][i], "degrees[" + std::to_string(i) + "]"));
      if (d == 0) fail("degrees[" + std::to_string(i) + "]", "degree must be nonzero");
      s.degrees.push_back(d);
    }
  }
  if (doc.contains("caps")) {
    const json& c = doc["caps"];
    if (c.contains("depth")) s.caps.depth = static_cast<int>(as_int(c["depth"], "caps.depth"));
    if (c.contains("budget")) s.caps.budget = static_cast<std::uint64_t>(as_int(c["budget"], "caps.budget"));
    if (c.contains("samples")) s.caps.samples = static_cast<std::size_t>(as_int(c["samples"], "caps.samples"));
    if (c.contains("seed")) s.caps.seed = static_cast<std::uint64_t>(as_int(c["seed"], "caps.seed"));
    if (c.contains("good_places")) s.caps.good_places = static_cast<std::size_t>(as_int(c["good_places"], "caps.good_places"));
    if (c.contains("good_place_samples")) {
      s.caps.good_place_samples = static_cast<std::size_t>(as_int(c["good_place_samples"], "caps.good_place_samples"));
    }
    if (s.caps.depth < 1) fail("caps.depth", "must be positive");
  }
  if (doc.contains("extra_points")) {
    const json& ep = doc["extra_points"];
    for (std::size_t i = 0; i < ep.size(); ++i) {
      const std::string at = "extra_points[" + std::to_string(i) + "]";
      ExtraPointSpec spec;
      spec.field = parse_descriptor(need(ep[i], "field", at), at + ".field");
      spec.place = Place::finite(Prime(spec.field.p));
      const json& cs = need(ep[i], "coordinates", at);
      if (!cs.is_array() || cs.size() != s.variety.dimension()) {
        fail(at + ".coordinates", "expected " + std::to_string(s.variety.dimension()) + " entries");
      }
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_null()) {
          spec.coords.emplace_back();
        } else {
          const std::string expr = as_string(cs[k], at + ".coordinates[" + std::to_string(k) + "]");
          guarded(at + ".coordinates[" + std::to_string(k) + "]",
                  [&] { return MultiPolynomial::parse(expr, {"pi", "omega"}).arity(); });
          spec.coords.emplace_back(expr);
        }
      }
      s.extra_points.push_back(std::move(spec));
    }
  }
  if (doc.contains("global_points")) {
    const json& gp = doc["global_points"];
    for (std::size_t i = 0; i < gp.size(); ++i) {
      const std::string at = "global_points[" + std::to_string(i) + "]";
      if (!gp[i].is_array() || gp[i].size() != s.variety.dimension()) fail(at, "wrong number of coordinates");
      std::vector<Rational> pt;
      for (std::size_t k = 0; k < gp[i].size(); ++k) pt.push_back(as_rational(gp[i][k], at));
      s.global_points.push_back(std::move(pt));
    }
  }
  if (doc.contains("expected")) s.expected = parse_expected(doc["expected"], "expected");
  return s;
}

Scenario load_scenario(const std::string& path_or_name) {
  if (auto text = catalog_text(path_or_name)) return parse_scenario(*text);
  std::ifstream in(path_or_name, std::ios::binary);
  if (!in) throw Error("cannot read scenario '" + path_or_name + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path_or_name + ": " + e.what());
  }
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::catalog_entries()) out.emplace_back(name);
  return out;
}

std::optional<std::string_view> catalog_text(std::string_view name) {
  for (const auto& [n, text] : detail::catalog_entries()) {
    if (n == name) return text;
  }
  return std::nullopt;
}

LocalPoint realize_point(const Scenario& s, const ExtraPointSpec& spec, const SearchCaps& caps) {
  const LocalField field = LocalField::build(spec.field);
  const std::vector<LocalFieldElement> gens = {field.uniformizer(), field.omega()};
  std::vector<std::optional<LocalFieldElement>> partial;
  for (const auto& c : spec.coords) {
    if (c) {
      partial.emplace_back(MultiPolynomial::parse(*c, {"pi", "omega"}).evaluate(std::span<const LocalFieldElement>(gens)));
    } else {
      partial.emplace_back();
    }
  }
  LocalPoint pt = complete_point(s.variety, field, partial, 0, caps.budget);
  if (s.variety.is_projective() && pt.normalization < 0) {
    for (std::size_t i = 0; i < pt.coords.size(); ++i) {
      if (s.variety.weights[i] == 1 && pt.coords[i] == field.one()) {
        pt.normalization = static_cast<int>(i);
        break;
      }
    }
  }
  return pt;
}

}  // namespace obstructor
