#include <gtest/gtest.h>

#include <cmath>

#include "obstructor/errors.hpp"
#include "obstructor/polynomial.hpp"
#include "obstructor/real.hpp"
#include "obstructor/search.hpp"
#include "obstructor/variety.hpp"
#include "oracles.hpp"

using namespace obstructor;

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

VarietyModel quartic_dp2() {
  return VarietyModel::projective({"x", "y", "z", "w"}, {"w^2 = -6*x^4 - 3*y^4 + 2*z^4"}, {1, 1, 1, 2});
}

RationalFunctionClass quartic_h() {
  return RationalFunctionClass::parse({{"-x^2 - y^2 + z^2", "z^2"}}, {"x", "y", "z", "w"});
}

// Primitive solutions mod p^k of a projective model with integer coefficients, divided by
// the number of units mod p^k.
std::uint64_t projective_count(const MultiPolynomial& f, std::int64_t p, int k) {
  const std::int64_t m = oracle::ipow(p, k);
  const std::size_t n = f.arity();
  std::vector<std::int64_t> x(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool primitive = false;
    for (auto c : x) primitive = primitive || c % p != 0;
    if (primitive) {
      std::int64_t v = 0;
      for (const auto& [e, c] : f.terms()) {
        std::int64_t t = oracle::mod(c.get_si(), m);
        for (std::size_t j = 0; j < n; ++j) {
          for (int r = 0; r < e[j]; ++r) t = t * x[j] % m;
        }
        v = (v + t) % m;
      }
      if (v == 0) ++count;
    }
    std::size_t i = 0;
    while (i < n && ++x[i] == m) x[i++] = 0;
    if (i == n) break;
  }
  return count / static_cast<std::uint64_t>(m / p * (p - 1));
}

}  // namespace

TEST(Polynomial, ParseAndArithmetic) {
  auto f = MultiPolynomial::parse("x^2 - 2*x*y + y^2", kXYZ);
  auto g = MultiPolynomial::parse("(x - y)^2", kXYZ);
  EXPECT_EQ(f, g);
  EXPECT_EQ(MultiPolynomial::parse("x^2 = y^2", kXYZ), MultiPolynomial::parse("(x-y)*(x+y)", kXYZ));
  EXPECT_EQ(f.total_degree(), 2);
  const std::vector<int> w = {1, 1, 1};
  EXPECT_EQ(f.weighted_degree(w), 2);
  EXPECT_EQ(MultiPolynomial::parse("x + z^2", kXYZ).weighted_degree(w), -1);
  EXPECT_EQ(f.derivative(0), MultiPolynomial::parse("2*x - 2*y", kXYZ));
  EXPECT_THROW(MultiPolynomial::parse("x + t", kXYZ), SchemaError);
  EXPECT_THROW(MultiPolynomial::parse("x + (y", kXYZ), SchemaError);
}

TEST(Polynomial, SubstituteAndEvaluate) {
  auto f = MultiPolynomial::parse("x*y - z", kXYZ);
  std::vector<MultiPolynomial> images = {MultiPolynomial::parse("s + 1", {"s", "t"}),
                                         MultiPolynomial::parse("t", {"s", "t"}),
                                         MultiPolynomial::parse("s*t", {"s", "t"})};
  EXPECT_EQ(f.substitute(images), MultiPolynomial::parse("t", {"s", "t"}));
  std::vector<Rational> pt = {Rational(1, 2), Rational(3), Rational(-1)};
  EXPECT_EQ(f.evaluate(pt), Rational(5, 2));
  std::vector<double> dp = {0.5, 3.0, -1.0};
  EXPECT_DOUBLE_EQ(f.evaluate(dp), 2.5);
}

TEST(Variety, ValidationCatchesSchemaProblems) {
  EXPECT_THROW(VarietyModel::projective(kXYZ, {"x^2 + y"}).validate(), SchemaError);
  EXPECT_NO_THROW(quartic_dp2().validate());
  EXPECT_NO_THROW(VarietyModel::projective({"x", "y"}, {}).validate());
  EXPECT_THROW(quartic_h().validate(VarietyModel::projective({"x", "y", "z", "w"}, {}, {1, 1, 2, 2})), SchemaError);
}

TEST(Search, ResidueCountsMatchBruteForce) {
  auto conic = VarietyModel::projective(kXYZ, {"x^2 + y^2 + z^2"});
  const LocalField Q2 = LocalField::qp(Prime(2));
  EXPECT_EQ(residue_solutions(conic, Q2, 1).vectors.size(), projective_count(conic.equations[0], 2, 1));
  EXPECT_TRUE(residue_solutions(conic, Q2, 2).vectors.empty());
  EXPECT_EQ(projective_count(conic.equations[0], 2, 2), 0U);

  auto cubic = VarietyModel::projective({"x", "y", "z", "w"}, {"x^3 + 4*y^3 + 10*z^3 + 25*w^3"});
  for (int k : {1, 2}) {
    EXPECT_EQ(residue_solutions(cubic, LocalField::qp(Prime(7)), k).vectors.size(),
              projective_count(cubic.equations[0], 7, k))
        << "k=" << k;
  }
  auto line = VarietyModel::projective(kXYZ, {"x + y + z"});
  EXPECT_EQ(residue_solutions(line, LocalField::qp(Prime(3)), 2).vectors.size(),
            projective_count(line.equations[0], 3, 2));
}

TEST(Search, LiftPointOnConicMod5) {
  auto conic = VarietyModel::projective(kXYZ, {"x^2 + y^2 - z^2"});
  const LocalField Q5 = LocalField::qp(Prime(5));
  // (3 : 4 : 5) reduces to (1 : 3 : 0) mod 5.
  LocalPoint P = lift_point(conic, Q5, {Q5.one(), Q5.from_integer(3), Q5.zero()}, 0);
  EXPECT_GE(residual_valuation(conic, P), 40);
  std::vector<std::int64_t> r;
  for (const auto& c : P.coords) r.push_back(c.coefficient(0, 0).is_zero() ? 0 : c.coefficient(0, 0).residue(3).get_si());
  EXPECT_EQ(oracle::mod(r[0] * r[0] + r[1] * r[1] - r[2] * r[2], 125), 0);
  EXPECT_EQ(r[0] % 5, 1);
  EXPECT_EQ(r[1] % 5, 3);
  EXPECT_EQ(r[2] % 5, 0);
  // A singular approximation has no usable minor.
  auto node = VarietyModel::projective(kXYZ, {"x*y"});
  EXPECT_THROW(lift_point(node, Q5, {Q5.zero(), Q5.zero(), Q5.one()}, 2), HypothesisError);
}

TEST(Search, LocalSolvability) {
  auto conic = VarietyModel::projective(kXYZ, {"x^2 + y^2 + z^2"});
  LocalSolvability s = has_local_point(conic, LocalField::qp(Prime(2)));
  EXPECT_EQ(s.outcome, Solvability::No);
  EXPECT_LE(s.depth, 3);
  LocalSolvability t = has_local_point(quartic_dp2(), LocalField::qp(Prime(5)));
  ASSERT_EQ(t.outcome, Solvability::Yes);
  EXPECT_GE(residual_valuation(quartic_dp2(), *t.witness), 40);
  EXPECT_EQ(has_local_point(VarietyModel::projective({"x", "y"}, {}), LocalField::qp(Prime(3))).outcome,
            Solvability::Yes);
}

TEST(Search, SamplingGivesDistinctLiftedPoints) {
  EXPECT_TRUE(sample_points(quartic_dp2(), LocalField::qp(Prime(2)), 0, 1).points.empty());
  SampleResult r = sample_points(quartic_dp2(), LocalField::qp(Prime(2)), 100, 1);
  ASSERT_EQ(r.points.size(), 100U);
  EXPECT_FALSE(r.shortfall);
  for (const auto& P : r.points) EXPECT_GE(residual_valuation(quartic_dp2(), P), 20);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    for (std::size_t j = i + 1; j < r.points.size(); ++j) {
      EXPECT_NE(r.points[i].to_string(), r.points[j].to_string());
    }
  }
  SampleResult again = sample_points(quartic_dp2(), LocalField::qp(Prime(2)), 100, 1);
  for (std::size_t i = 0; i < r.points.size(); ++i) EXPECT_EQ(r.points[i].to_string(), again.points[i].to_string());
  EXPECT_EQ(sample_points(VarietyModel::projective({"x", "y"}, {}), LocalField::qp(Prime(3)), 5, 2).points.size(), 5U);
}

TEST(Variety, EvaluationAtRamifiedPoint) {
  const LocalField S = LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1});
  const LocalFieldElement pi = S.uniformizer();
  const LocalFieldElement x = S.from_integer(3) + S.from_integer(7) * pi * pi;
  const LocalFieldElement y = S.from_integer(2) + S.from_integer(3) * pi + S.from_integer(5) * pi * pi;
  LocalPoint P = complete_point(quartic_dp2(), S, {x, y, S.one(), std::nullopt});
  EXPECT_GE(residual_valuation(quartic_dp2(), P), 40);
  LocalFieldElement h = eval_rational(quartic_h(), P).value;
  // Expanded by hand with pi^3 = 2.
  LocalFieldElement want = S.from_integer(-72) - S.from_integer(160) * pi - S.from_integer(71) * pi * pi;
  EXPECT_TRUE((h - want).is_zero());
  LocalFieldElement d = h - pi * pi - pi.pow(9);
  EXPECT_GE(d.valuation(), 10);
  EXPECT_EQ(h.valuation(), 2);
}

TEST(Variety, PushforwardCompose) {
  auto X = quartic_dp2();
  MorphismModel id{"id", X, X, {}};
  for (const auto& v : X.variables) id.coordinate_polys.push_back(MultiPolynomial::parse(v, X.variables));
  auto h = quartic_h();
  auto composed = pushforward_compose(id, h);
  EXPECT_EQ(composed.representatives[0].numerator, h.representatives[0].numerator);

  // Projection to P^2 followed by x/z.
  auto P2 = VarietyModel::projective(kXYZ, {});
  MorphismModel proj{"proj", X, P2, {}};
  for (const char* v : {"x", "y", "z"}) proj.coordinate_polys.push_back(MultiPolynomial::parse(v, X.variables));
  auto hx = RationalFunctionClass::parse({{"x", "z"}}, kXYZ);
  auto pulled = pushforward_compose(proj, hx);
  SampleResult pts = sample_points(X, LocalField::qp(Prime(3)), 20, 3);
  for (const auto& P : pts.points) {
    auto lhs = eval_rational(pulled, P).value;
    auto rhs = eval_rational(hx, proj.apply(P)).value;
    EXPECT_TRUE((lhs - rhs).is_zero());
  }
  auto one = RationalFunctionClass::parse({{"1", "1"}}, kXYZ);
  EXPECT_TRUE((eval_rational(pushforward_compose(proj, one), pts.points[0]).value - LocalField::qp(Prime(3)).one()).is_zero());
}

TEST(Real, ScanFindsPointsOnlyWhereTheyExist) {
  auto X = quartic_dp2();
  RealScanResult r = real_scan(X, 500, 1);
  ASSERT_TRUE(r.witness);
  EXPECT_LT(real_residual(X, *r.witness), 1e-9);
  EXPECT_FALSE(real_scan(VarietyModel::projective(kXYZ, {"x^2 + y^2 + z^2"}), 200, 1).witness);
  EXPECT_TRUE(real_scan(VarietyModel::projective(kXYZ, {"x^4 + y^4 - 1513*z^4"}), 200, 1).witness);
  auto pts = sample_real_points(X, 50, 4);
  EXPECT_EQ(pts.size(), 50U);
  for (const auto& p : pts) EXPECT_LT(real_residual(X, p), 1e-9);
}
