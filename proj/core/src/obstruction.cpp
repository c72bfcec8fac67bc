#include "obstructor/obstruction.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <set>
#include <sstream>

#include "obstructor/errors.hpp"
#include "obstructor/real.hpp"

namespace obstructor {

namespace {

std::string join_places(const std::vector<Place>& places) {
  std::string out = "{";
  for (std::size_t i = 0; i < places.size(); ++i) out += (i ? ", " : "") + places[i].to_string();
  return out + "}";
}

int max_degree_bound(const AdelicProfile& profile) {
  int d = 0;
  for (const auto& p : profile.profiles) {
    if (p.place.is_finite()) d = std::max(d, p.degree_bound);
  }
  return d;
}

}  // namespace

AdelicProfile constancy_report(const std::string& class_name, std::vector<PlaceProfile> profiles,
                               const std::vector<Place>& declared_bad_places) {
  AdelicProfile out;
  out.class_name = class_name;
  std::stable_sort(profiles.begin(), profiles.end(),
                   [](const PlaceProfile& a, const PlaceProfile& b) { return a.place < b.place; });
  out.profiles = std::move(profiles);
  out.declared_bad_places = declared_bad_places;
  std::sort(out.declared_bad_places.begin(), out.declared_bad_places.end());

  for (const Place& v : out.declared_bad_places) {
    const bool covered = std::any_of(out.profiles.begin(), out.profiles.end(),
                                     [&](const PlaceProfile& p) { return p.place == v; });
    if (!covered) {
      out.blocking_place = v;
      out.blocking_reason = "no profile at bad place " + v.to_string();
      return out;
    }
  }
  QmodZ sum;
  for (const auto& p : out.profiles) {
    if (p.status != ProfileStatus::Constant || !p.c_v) {
      out.blocking_place = p.place;
      out.blocking_reason = "place " + p.place.to_string() + " is " + std::string(to_string(p.status)) + ": " + p.reason;
      return out;
    }
    sum += *p.c_v;
  }
  out.a = sum;
  return out;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Obstructed: return "Obstructed";
    case Outcome::NoObstructionFromClass: return "NoObstructionFromClass";
    case Outcome::NotDerivable: return "NotDerivable";
  }
  return "?";
}

Outcome parse_outcome(std::string_view s) {
  if (s == "Obstructed") return Outcome::Obstructed;
  if (s == "NoObstructionFromClass") return Outcome::NoObstructionFromClass;
  if (s == "NotDerivable") return Outcome::NotDerivable;
  throw SchemaError("unknown verdict '" + std::string(s) + "'");
}

Verdict verdict_for_degree(const AdelicProfile& profile, int d) {
  if (d == 0) throw HypothesisError("zero-cycles of degree 0 carry no obstruction information");
  Verdict v;
  v.degree = d;
  for (const auto& p : profile.profiles) {
    std::string line = p.place.to_string() + ": ";
    if (p.c_v) {
      line += std::to_string(d) + " * " + p.c_v->to_string() + " = " + (d * *p.c_v).to_string();
    } else {
      line += std::string(to_string(p.status));
    }
    v.trace.push_back(std::move(line));
  }
  const std::string scope = "relative to declared bad places " + join_places(profile.declared_bad_places) +
                            " and tested degree bound " + std::to_string(max_degree_bound(profile));
  if (!profile.a) {
    v.outcome = Outcome::NotDerivable;
    v.witness_place = profile.blocking_place;
    v.reason = profile.blocking_reason +
               "; a constant value with the m * c_v pattern is needed at every place before any degree is decided";
    return v;
  }
  const QmodZ da = d * *profile.a;
  v.outcome = da.is_zero() ? Outcome::NoObstructionFromClass : Outcome::Obstructed;
  v.reason = "a = " + profile.a->to_string() + ", d * a = " + da.to_string() + ", " + scope;
  return v;
}

SolvabilityRow solvability_row(const VarietyModel& X, const Place& v, const SearchCaps& caps, std::uint64_t seed,
                               std::size_t real_attempts) {
  SolvabilityRow row;
  row.place = v;
  if (v.is_real()) {
    const RealScanResult r = real_scan(X, real_attempts, seed);
    row.visited = r.attempts;
    if (r.witness) {
      row.outcome = "Yes";
      row.witness = r.witness->to_string();
    } else {
      row.outcome = "Inconclusive";
      row.reason = "no real point from " + std::to_string(r.attempts) + " starts";
    }
    return row;
  }
  const LocalSolvability s = has_local_point(X, LocalField::qp(v.prime()), caps);
  row.outcome = std::string(to_string(s.outcome));
  row.depth = s.depth;
  row.visited = s.visited;
  if (s.witness) row.witness = s.witness->to_string();
  row.reason = s.reason;
  return row;
}

ObstructionReport hyp_report(const VarietyModel& X, const std::vector<QuaternionClass>& classes,
                             const std::vector<int>& degrees, const HypOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  ObstructionReport rep;
  rep.scenario = X.name;
  rep.seed = opt.seed;
  const auto finish = [&] {
    rep.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  };

  std::set<Place> bad(X.bad_places.begin(), X.bad_places.end());
  if (opt.run_solvability) {
    std::set<Place> places(opt.solvability_places.begin(), opt.solvability_places.end());
    places.insert(bad.begin(), bad.end());
    // Rows are independent; collected in place order.
    std::vector<std::future<SolvabilityRow>> rows;
    std::uint64_t stream = 0;
    for (const Place& v : places) {
      const std::uint64_t seed = derive_seed(opt.seed, 0x5000 + stream++);
      rows.push_back(std::async(std::launch::async, [&X, &opt, v, seed] {
        return solvability_row(X, v, opt.caps, seed, opt.real_attempts);
      }));
    }
    for (auto& f : rows) {
      SolvabilityRow row = f.get();
      row.required = bad.count(row.place) > 0;
      rep.solvability.push_back(std::move(row));
    }
  }
  if (!opt.run_scans || classes.empty()) return finish();

  for (const auto& row : rep.solvability) {
    if (row.required && row.outcome != "Yes") {
      rep.aborted = true;
      rep.abort_reason = "solvability at required place " + row.place.to_string() + " is " + row.outcome;
      return finish();
    }
  }

  rep.assumptions.push_back("places outside " + join_places({bad.begin(), bad.end()}) + " contribute 0");
  rep.assumptions.push_back("constancy is evidence on sampled points, " + std::to_string(opt.samples) +
                            " per field, over extensions up to the scanned degree bound");
  if (!X.is_projective()) rep.assumptions.push_back("affine searches sample integral points only");

  std::vector<Place> good;
  if (opt.run_good_places) {
    for (std::int64_t p = 3; good.size() < opt.good_place_count && p < 10'000; ++p) {
      if (is_prime(p) && !bad.count(Place::finite(Prime(p)))) good.push_back(Place::finite(Prime(p)));
    }
    rep.assumptions.push_back("good places spot-checked at " + join_places(good) + " with " +
                              std::to_string(opt.good_place_samples) + " samples each");
  }

  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const QuaternionClass& A = classes[ci];
    ClassReport cr;
    cr.name = A.name;
    cr.a = A.a.get_str();
    cr.origin = A.origin();

    std::vector<PlaceProfile> profiles;
    for (std::size_t si = 0; si < opt.scans.size(); ++si) {
      const PlaceScanSpec& spec = opt.scans[si];
      const std::uint64_t seed = derive_seed(opt.seed, 1000 * (ci + 1) + si);
      if (spec.place.is_real()) {
        profiles.push_back(scan_real(X, A, opt.samples, seed));
        continue;
      }
      ScanOptions so;
      so.degree_bound = spec.degree_bound;
      so.samples = opt.samples;
      so.seed = seed;
      so.caps = opt.caps;
      for (const auto& e : opt.extra_points) {
        if (e.field.prime() == spec.place.prime()) so.extra_points.push_back(e);
      }
      profiles.push_back(scan_place(X, A, spec.place, so));
    }
    cr.profile = constancy_report(A.name, std::move(profiles), {bad.begin(), bad.end()});

    if (opt.run_verdicts) {
      for (int d : degrees) cr.verdicts.push_back(verdict_for_degree(cr.profile, d));
    }

    for (std::size_t gi = 0; gi < good.size(); ++gi) {
      GoodPlaceCheck g;
      g.place = good[gi];
      const SampleResult s = sample_points(X, LocalField::qp(good[gi].prime()), opt.good_place_samples,
                                           derive_seed(opt.seed, 7000 + 100 * ci + gi), opt.caps);
      for (const auto& p : s.points) {
        try {
          const QmodZ v = evaluate(A, p).value;
          ++g.evaluations;
          if (!v.is_zero()) ++g.nonzero;
        } catch (const Error&) {
        }
      }
      cr.good_places.push_back(g);
    }

    if (A.is_pulled_back() && opt.coherence_points > 0) {
      for (const auto& spec : opt.scans) {
        if (!spec.place.is_finite()) continue;
        const CoherenceCheck c = pullback_coherence(X, A, LocalField::qp(spec.place.prime()), opt.coherence_points,
                                                    derive_seed(opt.seed, 9000 + ci), opt.caps);
        cr.coherence_points += c.points;
        cr.coherence_mismatches += c.mismatches;
      }
    }

    for (const auto& gp : opt.global_points) {
      std::ostringstream line;
      line << "(";
      for (std::size_t i = 0; i < gp.size(); ++i) line << (i ? " : " : "") << gp[i].get_str();
      line << ") ";
      bool on_x = gp.size() == X.dimension();
      for (const auto& eq : X.equations) on_x = on_x && eq.evaluate(std::span<const Rational>(gp)) == 0;
      if (!on_x) {
        line << "is not on the variety";
      } else if (!cr.profile.a) {
        line << "on the variety; no constant a to test";
      } else {
        bool consistent = true;
        for (int d : degrees) consistent = consistent && (d * *cr.profile.a).is_zero();
        line << (consistent ? "consistent: d * a = 0 for all tested d"
                            : "contradiction: a global point exists but a = " + cr.profile.a->to_string());
      }
      cr.global_point_checks.push_back(line.str());
    }
    rep.classes.push_back(std::move(cr));
  }
  return finish();
}

}  // namespace obstructor
