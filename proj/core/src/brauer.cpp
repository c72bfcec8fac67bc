#include "obstructor/brauer.hpp"

#include <algorithm>
#include <future>

#include "obstructor/errors.hpp"
#include "obstructor/extensions.hpp"
#include "obstructor/real.hpp"

namespace obstructor {

QuaternionClass QuaternionClass::direct(std::string name, Rational a, RationalFunctionClass h) {
  if (a == 0) throw SchemaError("class '" + name + "': a must be nonzero");
  QuaternionClass c;
  c.name = std::move(name);
  c.a = std::move(a);
  c.h = std::move(h);
  return c;
}

QuaternionClass QuaternionClass::pulled_back(std::string name, Rational a, RationalFunctionClass h_on_target,
                                             MorphismModel g) {
  if (a == 0) throw SchemaError("class '" + name + "': a must be nonzero");
  h_on_target.validate(g.target);
  QuaternionClass c;
  c.name = std::move(name);
  c.a = std::move(a);
  c.h = pushforward_compose(g, h_on_target);
  c.target_h = std::move(h_on_target);
  c.morphism = std::move(g);
  return c;
}

std::string QuaternionClass::origin() const {
  return morphism ? "pulled_back(" + morphism->name + ")" : "direct";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EvaluationRecord evaluate(const QuaternionClass& A, const LocalPoint& p, const ConicOptions& options) {
  const RationalValue hv = eval_rational(A.h, p);
  const SymbolResult s = hilbert_ext_detailed(A.a, hv.value, options);
  EvaluationRecord r;
  r.place = Place::finite(p.field.prime());
  r.field = p.field.descriptor();
  r.field_name = p.field.name();
  r.point = p.to_string();
  r.value = s.value;
  r.path = std::string(to_string(s.path));
  r.representative = hv.representative;
  return r;
}

std::optional<EvaluationRecord> evaluate_real(const QuaternionClass& A, const RealPoint& p) {
  const auto hv = eval_rational(A.h, p);
  if (!hv) return std::nullopt;
  EvaluationRecord r;
  r.field_name = "R";
  r.point = p.to_string();
  r.value = hilbert_real(A.a.get_d(), *hv);
  r.path = "real";
  return r;
}

std::string_view to_string(ProfileStatus s) {
  switch (s) {
    case ProfileStatus::Constant: return "constant";
    case ProfileStatus::Nonconstant: return "nonconstant";
    case ProfileStatus::Incomplete: return "incomplete";
  }
  return "?";
}

ProfileStatus parse_profile_status(std::string_view s) {
  if (s == "constant") return ProfileStatus::Constant;
  if (s == "nonconstant") return ProfileStatus::Nonconstant;
  if (s == "incomplete") return ProfileStatus::Incomplete;
  throw SchemaError("unknown profile status '" + std::string(s) + "'");
}

namespace {

void record(FieldObservation& obs, EvaluationRecord r) {
  ++obs.evaluations;
  auto it = std::lower_bound(obs.values.begin(), obs.values.end(), r.value);
  if (it != obs.values.end() && *it == r.value) return;
  const auto at = it - obs.values.begin();
  obs.values.insert(it, r.value);
  obs.exemplars.insert(obs.exemplars.begin() + at, std::move(r));
}

// Evaluates, folding the recoverable failures into the counters.
bool try_record(FieldObservation& obs, const QuaternionClass& A, const LocalPoint& p) {
  try {
    record(obs, evaluate(A, p));
    return true;
  } catch (const NoUsableRepresentative&) {
    ++obs.skipped;
  } catch (const InconclusiveError&) {
    ++obs.inconclusive;
  } catch (const PrecisionError&) {
    ++obs.inconclusive;
  }
  return false;
}

struct FieldTask {
  LocalField field;
  std::vector<LocalPoint> extras;
};

FieldObservation scan_field(const VarietyModel& X, const QuaternionClass& A, const FieldTask& task,
                            const ScanOptions& opt, std::uint64_t seed, std::vector<LocalPoint>* base_points) {
  FieldObservation obs;
  obs.field = task.field.name();
  obs.descriptor = task.field.descriptor();
  obs.degree = task.field.degree();
  std::size_t good = 0;
  std::size_t drawn = 0;
  const std::size_t limit = 10 * std::max<std::size_t>(opt.samples, 1);
  for (int round = 0; good < opt.samples && drawn < limit && round < 10; ++round) {
    const std::size_t want = std::min(limit - drawn, round == 0 ? opt.samples : 2 * (opt.samples - good));
    const SampleResult s = sample_points(X, task.field, want, derive_seed(seed, static_cast<std::uint64_t>(round)),
                                         opt.caps);
    drawn += s.points.size();
    obs.shortfall = obs.shortfall || s.shortfall;
    for (const auto& p : s.points) {
      if (good >= opt.samples) break;
      if (try_record(obs, A, p)) {
        ++good;
        if (base_points && base_points->size() < opt.restriction_points) base_points->push_back(p);
      }
    }
    if (s.points.empty()) break;
  }
  if (good < opt.samples) obs.shortfall = true;
  for (const auto& p : task.extras) {
    if (try_record(obs, A, p)) ++obs.explicit_points;
  }
  if (obs.evaluations == 0) {
    const LocalSolvability ls = has_local_point(X, task.field, opt.caps);
    obs.certified_empty = ls.outcome == Solvability::No;
  }
  return obs;
}

LocalPoint embed_point(const LocalPoint& p, const LocalField& into) {
  LocalPoint out{into, {}, p.normalization};
  for (const auto& c : p.coords) out.coords.push_back(into.embed(c.coefficients()[0]));
  return out;
}

}  // namespace

PlaceProfile scan_place(const VarietyModel& X, const QuaternionClass& A, const Place& v, const ScanOptions& opt) {
  if (v.is_real()) return scan_real(X, A, opt.samples, opt.seed);
  if (opt.degree_bound < 1 || opt.degree_bound > kExtensionDegreeCap) {
    throw HypothesisError("degree bound " + std::to_string(opt.degree_bound) + " outside 1.." +
                          std::to_string(kExtensionDegreeCap));
  }
  const Prime p = v.prime();
  PlaceProfile prof;
  prof.place = v;
  prof.degree_bound = opt.degree_bound;
  prof.samples = opt.samples;

  std::vector<FieldTask> tasks;
  bool catalog_complete = true;
  for (int m = 1; m <= opt.degree_bound; ++m) {
    const ExtensionCatalog cat = enumerate_extensions(p, m);
    catalog_complete = catalog_complete && cat.complete;
    for (const auto& f : cat.entries) tasks.push_back({f, {}});
  }
  for (const auto& e : opt.extra_points) {
    if (!(e.field.prime() == p) || e.field.degree() > opt.degree_bound) continue;
    bool placed = false;
    for (auto& t : tasks) {
      if (t.field.degree() == e.field.degree() && isomorphic(t.field, e.field)) {
        // Keep the point in its own presentation; the values are field invariants.
        t.extras.push_back(e);
        placed = true;
        break;
      }
    }
    if (!placed) tasks.push_back({e.field, {e}});
  }

  // The base field runs first: its points feed the restriction checks.
  std::vector<LocalPoint> base_points;
  std::vector<FieldObservation> obs(tasks.size());
  obs[0] = scan_field(X, A, tasks[0], opt, derive_seed(opt.seed, 0), &base_points);
  if (opt.parallel) {
    std::vector<std::future<FieldObservation>> jobs;
    for (std::size_t i = 1; i < tasks.size(); ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i] {
        return scan_field(X, A, tasks[i], opt, derive_seed(opt.seed, i), nullptr);
      }));
    }
    for (std::size_t i = 1; i < tasks.size(); ++i) obs[i] = jobs[i - 1].get();
  } else {
    for (std::size_t i = 1; i < tasks.size(); ++i) {
      obs[i] = scan_field(X, A, tasks[i], opt, derive_seed(opt.seed, i), nullptr);
    }
  }

  if (!base_points.empty()) prof.base_witness = base_points.front().to_string();

  // Restriction consistency: an embedded Q_v point must evaluate to m times its base value.
  for (std::size_t i = 1; i < tasks.size(); ++i) {
    for (const auto& bp : base_points) {
      QmodZ base_value;
      try {
        base_value = evaluate(A, bp).value;
      } catch (const Error&) {
        continue;
      }
      const LocalPoint ep = embed_point(bp, tasks[i].field);
      try {
        EvaluationRecord r = evaluate(A, ep);
        ++prof.restriction_checks;
        if (r.value != tasks[i].field.degree() * base_value) ++prof.restriction_failures;
        record(obs[i], std::move(r));
        ++obs[i].embedded_points;
      } catch (const NoUsableRepresentative&) {
        ++obs[i].skipped;
      } catch (const InconclusiveError&) {
        ++obs[i].inconclusive;
      } catch (const PrecisionError&) {
        ++obs[i].inconclusive;
      }
    }
  }
  prof.fields = std::move(obs);

  const FieldObservation& base = prof.fields.front();
  const auto nonconstant = [&](std::vector<EvaluationRecord> pair, std::string why) {
    prof.status = ProfileStatus::Nonconstant;
    prof.witness_pair = std::move(pair);
    prof.reason = std::move(why);
  };
  for (const auto& f : prof.fields) {
    if (f.values.size() > 1) {
      nonconstant({f.exemplars[0], f.exemplars[1]}, "two values over " + f.field);
      return prof;
    }
  }
  if (base.values.empty()) {
    prof.status = ProfileStatus::Incomplete;
    prof.reason = base.certified_empty ? "no points over Q_" + std::to_string(p.value()) : "no evaluations over Q_" + std::to_string(p.value());
    return prof;
  }
  const QmodZ c = base.values.front();
  for (const auto& f : prof.fields) {
    if (f.values.size() == 1 && f.values.front() != f.degree * c) {
      nonconstant({base.exemplars.front(), f.exemplars.front()},
                  "value " + f.values.front().to_string() + " over " + f.field + " breaks " +
                      std::to_string(f.degree) + " * " + c.to_string());
      return prof;
    }
  }
  for (const auto& f : prof.fields) {
    if (f.inconclusive > 0) {
      prof.status = ProfileStatus::Incomplete;
      prof.reason = std::to_string(f.inconclusive) + " inconclusive symbols over " + f.field;
      return prof;
    }
    if (f.values.empty() && !f.certified_empty) {
      prof.status = ProfileStatus::Incomplete;
      prof.reason = "no evaluations over " + f.field;
      return prof;
    }
  }
  if (prof.restriction_failures > 0) {
    prof.status = ProfileStatus::Incomplete;
    prof.reason = "restriction check failed " + std::to_string(prof.restriction_failures) + " times";
    return prof;
  }
  if (!catalog_complete) {
    prof.status = ProfileStatus::Incomplete;
    prof.reason = "extension catalog truncated by its cap";
    return prof;
  }
  prof.status = ProfileStatus::Constant;
  prof.c_v = c;
  prof.reason = "constant on all tested points";
  return prof;
}

PlaceProfile scan_real(const VarietyModel& X, const QuaternionClass& A, std::size_t samples, std::uint64_t seed) {
  PlaceProfile prof;
  prof.place = Place::real();
  prof.samples = samples;
  FieldObservation obs;
  obs.field = "R";
  const auto points = sample_real_points(X, samples, seed, 0);
  for (const auto& p : points) {
    if (auto r = evaluate_real(A, p)) {
      if (!prof.base_witness) prof.base_witness = r->point;
      record(obs, std::move(*r));
    } else {
      ++obs.skipped;
    }
  }
  obs.shortfall = obs.evaluations < samples;
  prof.fields.push_back(obs);
  if (obs.values.size() > 1) {
    prof.status = ProfileStatus::Nonconstant;
    prof.witness_pair = {obs.exemplars[0], obs.exemplars[1]};
    prof.reason = "two values over R";
  } else if (obs.values.empty()) {
    prof.status = ProfileStatus::Incomplete;
    prof.reason = "no real witnesses found";
  } else {
    prof.status = ProfileStatus::Constant;
    prof.c_v = obs.values.front();
    prof.reason = "constant on all tested points";
  }
  return prof;
}

CoherenceCheck pullback_coherence(const VarietyModel& X, const QuaternionClass& A, const LocalField& field,
                                  std::size_t points, std::uint64_t seed, const SearchCaps& caps) {
  CoherenceCheck out;
  if (!A.morphism || !A.target_h) return out;
  const SampleResult s = sample_points(X, field, points, seed, caps);
  for (const auto& p : s.points) {
    try {
      const QmodZ here = evaluate(A, p).value;
      const LocalPoint q = A.morphism->apply(p);
      const QmodZ there = hilbert_ext(A.a, eval_rational(*A.target_h, q).value);
      ++out.points;
      if (here != there) ++out.mismatches;
    } catch (const NoUsableRepresentative&) {
    } catch (const InconclusiveError&) {
    }
  }
  return out;
}

}  // namespace obstructor
