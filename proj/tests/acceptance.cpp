// Acceptance checks, one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run one

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "obstructor/brauer.hpp"
#include "obstructor/errors.hpp"
#include "obstructor/extensions.hpp"
#include "obstructor/hilbert.hpp"
#include "obstructor/obstruction.hpp"
#include "obstructor/real.hpp"
#include "obstructor/report.hpp"
#include "obstructor/run.hpp"
#include "obstructor/scenario.hpp"
#include "obstructor/search.hpp"
#include "oracles.hpp"

using namespace obstructor;

namespace {

// Pinned limits.
constexpr int kCongruenceDigits = 10;
constexpr int kCertifiedDigits = 12;
constexpr std::size_t kQ2Points = 200;
constexpr std::size_t kOddPoints = 100;
constexpr std::size_t kRealPoints = 50;
constexpr int kProductPairs = 1000;
constexpr long kProductRange = 1000;
constexpr int kRestrictionCases = 200;
constexpr int kOracleInputs = 100;
constexpr int kPointlessConics = 10;
constexpr std::int64_t kSolvabilityPrimeBound = 100;

struct Check {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Check()> body;
};

VarietyModel quartic_dp2() { return load_scenario("kres-tch-dp2").variety; }
QuaternionClass quartic_class() { return load_scenario("kres-tch-dp2").classes.at(0); }

std::string count_line(std::size_t bad, std::size_t total, const char* what) {
  return std::to_string(bad) + "/" + std::to_string(total) + " " + what;
}

Check congruence() {
  Scenario s = load_scenario("kres-tch-dp2");
  LocalPoint P = realize_point(s, s.extra_points.at(0), SearchCaps::defaults());
  const LocalField& S = P.field;
  const LocalFieldElement pi = S.uniformizer();
  const LocalFieldElement h = eval_rational(s.classes[0].h, P).value;
  const LocalFieldElement d = h - pi * pi - pi.pow(9);
  const bool congruent = !d.is_zero() ? d.valuation() >= kCongruenceDigits : d.absolute_precision() >= kCongruenceDigits;
  const int digits = h.absolute_precision();
  const bool square = is_square(h / (pi * pi));
  const QmodZ value = evaluate(s.classes[0], P).value;
  Check o;
  o.pass = S.e() == 3 && congruent && digits >= kCertifiedDigits && square && value.is_zero();
  o.detail = "h(P) - pi^2 - pi^9 has val " + (d.is_zero() ? std::string(">= ") + std::to_string(d.absolute_precision())
                                                         : std::to_string(d.valuation())) +
             ", " + std::to_string(digits) + " certified digits, h/pi^2 square=" + (square ? "yes" : "no") +
             ", ev=" + value.to_string();
  return o;
}

Check quartic_profile() {
  const VarietyModel X = quartic_dp2();
  const QuaternionClass A = quartic_class();
  std::size_t bad = 0, total = 0;
  std::string detail;
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    const std::size_t n = p == 2 ? kQ2Points : kOddPoints;
    SampleResult r = sample_points(X, LocalField::qp(Prime(p)), n, 1);
    const QmodZ want = p == 2 ? QmodZ::half() : QmodZ();
    std::size_t wrong = r.points.size() < n ? n - r.points.size() : 0;
    for (const auto& P : r.points) {
      if (evaluate(A, P).value != want) ++wrong;
    }
    bad += wrong;
    total += n;
    detail += "Q_" + std::to_string(p) + " " + std::to_string(r.points.size()) + " pts; ";
  }
  auto real = sample_real_points(X, kRealPoints, 1);
  std::size_t wrong = real.size() < kRealPoints ? kRealPoints - real.size() : 0;
  for (const auto& P : real) {
    auto rec = evaluate_real(A, P);
    if (!rec || !rec->value.is_zero()) ++wrong;
  }
  bad += wrong;
  total += kRealPoints;
  detail += "R " + std::to_string(real.size()) + " pts; " + count_line(bad, total, "exceptions");
  return {bad == 0, detail};
}

Check ramified_nonconstancy() {
  Scenario s = load_scenario("kres-tch-dp2");
  ScanOptions o;
  o.degree_bound = 3;
  o.samples = s.caps.samples;
  o.seed = s.caps.seed;
  o.extra_points.push_back(realize_point(s, s.extra_points.at(0), o.caps));
  std::vector<PlaceProfile> profiles;
  profiles.push_back(scan_place(s.variety, s.classes[0], Place::finite(Prime(2)), o));
  profiles.push_back(scan_place(s.variety, s.classes[0], Place::finite(Prime(3)), o));
  profiles.push_back(scan_real(s.variety, s.classes[0], o.samples, o.seed));
  const PlaceProfile& p2 = profiles[0];
  bool cubic_witness = false;
  for (const auto& rec : p2.witness_pair) cubic_witness = cubic_witness || (rec.field && rec.field->e() == 3);
  AdelicProfile adelic = constancy_report("A", profiles, s.variety.bad_places);
  Verdict v = verdict_for_degree(adelic, 1);
  Check out;
  out.pass = p2.status == ProfileStatus::Nonconstant && cubic_witness && v.outcome == Outcome::NotDerivable &&
             p2.restriction_failures == 0;
  out.detail = std::string("v=2 status ") + std::string(to_string(p2.status)) +
               (cubic_witness ? " with ramified cubic witness" : " without ramified cubic witness") + ", d=1 " +
               std::string(to_string(v.outcome));
  return out;
}

Check product_formula() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> dist(-kProductRange, kProductRange);
  int failures = 0, n = 0;
  while (n < kProductPairs) {
    const long a = dist(rng), b = dist(rng);
    if (a == 0 || b == 0) continue;
    ++n;
    if (!product_formula_check(a, b)) ++failures;
  }
  return {failures == 0, count_line(static_cast<std::size_t>(failures), static_cast<std::size_t>(n), "pairs fail")};
}

Check restriction() {
  std::mt19937_64 rng(77);
  std::vector<LocalField> fields;
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int m = 1; m <= 3; ++m) {
      for (const auto& S : enumerate_extensions(Prime(p), m).entries) fields.push_back(S);
    }
  }
  int failures = 0, n = 0;
  std::string first;
  while (n < kRestrictionCases) {
    const LocalField& S = fields[rng() % fields.size()];
    const long a = static_cast<long>(rng() % 401) - 200, b = static_cast<long>(rng() % 401) - 200;
    if (a == 0 || b == 0) continue;
    ++n;
    const QmodZ want = S.degree() * hilbert_qp(Rational(a), Rational(b), S.prime());
    QmodZ got;
    try {
      got = hilbert_ext(Rational(a), S.from_integer(b));
    } catch (const Error& e) {
      ++failures;
      if (first.empty()) first = std::string("; ") + e.what();
      continue;
    }
    if (got != want) {
      ++failures;
      if (first.empty()) first = "; first: " + S.name() + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
  }
  return {failures == 0, count_line(static_cast<std::size_t>(failures), static_cast<std::size_t>(n), "cases fail") +
                             " over " + std::to_string(fields.size()) + " fields" + first};
}

Check census() {
  bool ok = true;
  std::string detail;
  for (auto [p, want] : {std::pair<std::int64_t, std::size_t>{2, 7}, {5, 3}}) {
    ExtensionCatalog cat = enumerate_extensions(Prime(p), 2);
    std::size_t iso = 0;
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
      for (std::size_t j = 0; j < cat.entries.size(); ++j) {
        if (i != j && isomorphic(cat.entries[i], cat.entries[j])) ++iso;
      }
    }
    ok = ok && cat.complete && cat.entries.size() == want && iso == 0;
    detail += "(" + std::to_string(p) + ",2): " + std::to_string(cat.entries.size()) + " fields, " +
              std::to_string(iso) + " isomorphic pairs; ";
  }
  // Each quadratic field of Q_2 contains the root of exactly one nontrivial square class.
  std::set<long> classes;
  for (const auto& S : enumerate_extensions(Prime(2), 2).entries) {
    for (long d : {3, 5, 7, 2, 6, 10, 14}) {
      if (oracle::is_square_exhaustive(S.from_integer(d))) classes.insert(d);
    }
  }
  ok = ok && classes.size() == 7;
  detail += std::to_string(classes.size()) + "/7 square classes split";
  return {ok, detail};
}

Check threefold() {
  Scenario s = load_scenario("threefold-q5");
  RunFlags f;
  f.include_timing = false;
  RunResult r = run(Command::Verdict, s, f);
  const ClassReport& c = r.report.classes.at(0);
  bool constant = true;
  std::string detail;
  for (const auto& p : c.profile.profiles) {
    constant = constant && p.status == ProfileStatus::Constant && p.restriction_failures == 0;
    detail += p.place.to_string() + ": " + std::string(to_string(p.status)) + (p.c_v ? " " + p.c_v->to_string() : "") +
              " (D=" + std::to_string(p.degree_bound) + ", n=" + std::to_string(p.samples) + "); ";
  }
  bool sizes = false;
  for (const auto& p : c.profile.profiles) sizes = sizes || (p.place.is_finite() && p.degree_bound == 2 && p.samples == 50);
  bool obstructed = c.verdicts.size() == 2;
  for (const auto& v : c.verdicts) obstructed = obstructed && v.outcome == Outcome::Obstructed;
  const bool nonzero = c.profile.a && !c.profile.a->is_zero();
  detail += "a=" + (c.profile.a ? c.profile.a->to_string() : std::string("none"));
  for (const auto& v : c.verdicts) detail += ", d=" + std::to_string(v.degree) + " " + std::string(to_string(v.outcome));
  return {constant && sizes && nonzero && obstructed, detail};
}

Check solvability_suite() {
  std::vector<Place> places;
  for (std::int64_t p = 2; p <= kSolvabilityPrimeBound; ++p) {
    if (is_prime(p)) places.push_back(Place::finite(Prime(p)));
  }
  places.push_back(Place::real());
  std::size_t rows = 0, yes = 0, inconclusive = 0;
  std::string detail;
  for (const char* name : {"cubic-p2-q5", "k3-233-nguyen", "k3-23-coraym", "k3-225-coraym", "curve-17-89"}) {
    Scenario s = load_scenario(name);
    std::set<Place> todo(places.begin(), places.end());
    todo.insert(s.variety.bad_places.begin(), s.variety.bad_places.end());
    std::string failed;
    for (const Place& v : todo) {
      SolvabilityRow row = solvability_row(s.variety, v, SearchCaps::defaults(), s.caps.seed);
      ++rows;
      if (row.outcome == "Yes") {
        ++yes;
      } else {
        if (row.outcome == "Inconclusive") ++inconclusive;
        failed += (failed.empty() ? "" : ",") + v.to_string() + "=" + row.outcome;
      }
    }
    if (!failed.empty()) detail += std::string(name) + " [" + failed + "]; ";
  }
  detail += std::to_string(yes) + "/" + std::to_string(rows) + " rows Yes, " + std::to_string(inconclusive) +
            " Inconclusive";
  return {yes == rows, detail};
}

Check oracle_equivalence() {
  std::mt19937_64 rng(99);
  const std::vector<LocalField> fields = {
      LocalField::qp(Prime(2)), LocalField::unramified(Prime(2), 2),
      LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1}), LocalField::totally_ramified(Prime(3), {-3, 0, 1}),
      LocalField::unramified(Prime(5), 2)};
  std::size_t square_bad = 0, hensel_bad = 0, hensel_runs = 0;
  for (const auto& S : fields) {
    for (int i = 0; i < kOracleInputs; ++i) {
      std::vector<PadicNumber> c;
      for (int j = 0; j < S.degree(); ++j) {
        c.push_back(PadicNumber::from_integer(static_cast<long>(rng() % 201) - 100, S.prime(), S.precision()));
      }
      LocalFieldElement x = S.element(std::move(c));
      if (x.is_zero()) x = S.one();
      x = x.shifted(static_cast<int>(rng() % 3));
      const bool want = oracle::is_square_exhaustive(x);
      if (is_square(x) != want) ++square_bad;
      // Newton from every exhaustive approximate root of T^2 - u.
      const LocalFieldElement u = x.unit_part();
      const int k = S.prime().value() == 2 ? 2 * S.e() + 1 : 1;
      const int radius = k - (S.prime().value() == 2 ? S.e() : 0);
      bool lifted = false, approx = false;
      oracle::for_each_residue(S, k, [&](const LocalFieldElement& a) {
        if (lifted) return;
        const LocalFieldElement fa = a * a - u;
        if (!fa.is_zero() && fa.valuation() < k) return;
        approx = true;
        ++hensel_runs;
        try {
          LocalFieldElement r = hensel_lift({-u, S.zero(), S.one()}, a);
          const LocalFieldElement diff = r - a;
          lifted = (r * r - u).is_zero() && (diff.is_zero() || diff.valuation() >= radius);
        } catch (const Error&) {
        }
      });
      if (approx != lifted || approx != oracle::is_square_exhaustive(u)) ++hensel_bad;
    }
  }
  // Pointless diagonal conics a x^2 + b y^2 + c z^2.
  std::size_t conics = 0, conic_bad = 0;
  std::string conic_list;
  for (auto [p, quota] : {std::pair<std::int64_t, std::size_t>{2, 3}, {3, 3}, {5, 2}, {7, 2}}) {
    std::size_t taken = 0;
    for (long a = 1; a <= 3; ++a) {
      for (long b = -7; b <= 7; ++b) {
        for (long c = b; c <= 7 && taken < quota; ++c) {
          if (b == 0 || c == 0) continue;
          if (hilbert_qp(Rational(-b, a), Rational(-c, a), Prime(p)).is_zero()) continue;
          auto X = VarietyModel::projective({"x", "y", "z"}, {std::to_string(a) + "*x^2 + " + std::to_string(b) +
                                                              "*y^2 + " + std::to_string(c) + "*z^2"});
          LocalSolvability s = has_local_point(X, LocalField::qp(Prime(p)));
          const bool none = s.outcome == Solvability::No &&
                            !oracle::diagonal_conic_has_primitive_solution(a, b, c, p, s.depth);
          if (!none) ++conic_bad;
          ++conics;
          ++taken;
          conic_list += " (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")@" +
                        std::to_string(p) + " k=" + std::to_string(s.depth);
        }
      }
    }
  }
  const std::size_t total = fields.size() * kOracleInputs;
  return {square_bad == 0 && hensel_bad == 0 && conic_bad == 0 && conics == kPointlessConics,
          count_line(square_bad, total, "is_square mismatches") + ", " + count_line(hensel_bad, total, "hensel mismatches") +
              " (" + std::to_string(hensel_runs) + " lifts), " + count_line(conic_bad, conics, "conic mismatches:") +
              conic_list};
}

Check determinism() {
  auto once = [] {
    std::string all;
    for (const auto& n : catalog_names()) {
      RunFlags f;
      f.include_timing = false;
      all += run(Command::All, load_scenario(n), f).output;
    }
    return all;
  };
  const std::string a = once(), b = once();
  return {a == b && !a.empty(), std::to_string(catalog_names().size()) + " scenarios, " + std::to_string(a.size()) +
                                    " bytes, identical=" + (a == b ? "yes" : "no")};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "ramified point congruence", 1, congruence},
      {2, "del Pezzo local profile", 120, quartic_profile},
      {3, "nonconstant 2-adic profile", 60, ramified_nonconstancy},
      {4, "product formula", 30, product_formula},
      {5, "restriction rule", 60, restriction},
      {6, "extension census", 60, census},
      {7, "threefold obstruction", 300, threefold},
      {8, "solvability suite", 600, solvability_suite},
      {9, "oracle equivalence", 120, oracle_equivalence},
      {10, "catalog determinism", 300, determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failed = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Check o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %s  %s: %s [%.2f s, limit %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", too slow");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
