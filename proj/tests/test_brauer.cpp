#include <gtest/gtest.h>

#include "obstructor/brauer.hpp"
#include "obstructor/extensions.hpp"
#include "obstructor/scenario.hpp"
#include "obstructor/search.hpp"

using namespace obstructor;

namespace {

VarietyModel quartic_dp2() {
  return VarietyModel::projective({"x", "y", "z", "w"}, {"w^2 = -6*x^4 - 3*y^4 + 2*z^4"}, {1, 1, 1, 2});
}

QuaternionClass quartic_class(Rational a = -1) {
  return QuaternionClass::direct("A", a, RationalFunctionClass::parse({{"-x^2 - y^2 + z^2", "z^2"}}, {"x", "y", "z", "w"}));
}

LocalPoint ramified_point() {
  const LocalField S = LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1});
  const LocalFieldElement pi = S.uniformizer();
  return complete_point(quartic_dp2(), S,
                        {S.from_integer(3) + S.from_integer(7) * pi * pi,
                         S.from_integer(2) + S.from_integer(3) * pi + S.from_integer(5) * pi * pi, S.one(), std::nullopt});
}

}  // namespace

TEST(Evaluate, KnownValues) {
  const auto A = quartic_class();
  for (const auto& P : sample_points(quartic_dp2(), LocalField::qp(Prime(2)), 20, 1).points) {
    EXPECT_EQ(evaluate(A, P).value, QmodZ::half()) << P.to_string();
  }
  for (const auto& P : sample_points(quartic_dp2(), LocalField::qp(Prime(7)), 20, 1).points) {
    EXPECT_TRUE(evaluate(A, P).value.is_zero());
  }
  EvaluationRecord r = evaluate(A, ramified_point());
  EXPECT_TRUE(r.value.is_zero());
  EXPECT_EQ(r.place, Place::finite(Prime(2)));
  ASSERT_TRUE(r.field);
  EXPECT_EQ(r.field->e(), 3);
}

TEST(Evaluate, TrivialClassIsZero) {
  const auto A = quartic_class(1);
  for (const auto& P : sample_points(quartic_dp2(), LocalField::qp(Prime(2)), 10, 2).points) {
    EXPECT_TRUE(evaluate(A, P).value.is_zero());
  }
}

TEST(Scan, ThreeAdicProfileIsConstant) {
  ScanOptions o;
  o.degree_bound = 2;
  o.samples = 20;
  PlaceProfile prof = scan_place(quartic_dp2(), quartic_class(), Place::finite(Prime(3)), o);
  EXPECT_EQ(prof.status, ProfileStatus::Constant);
  ASSERT_TRUE(prof.c_v);
  EXPECT_TRUE(prof.c_v->is_zero());
  EXPECT_EQ(prof.fields.size(), 4U);
  EXPECT_EQ(prof.restriction_failures, 0U);
  EXPECT_GT(prof.restriction_checks, 0U);
}

TEST(Scan, ExplicitRamifiedPointBreaksConstancy) {
  ScanOptions o;
  o.degree_bound = 3;
  o.samples = 20;
  o.extra_points.push_back(ramified_point());
  PlaceProfile prof = scan_place(quartic_dp2(), quartic_class(), Place::finite(Prime(2)), o);
  EXPECT_EQ(prof.status, ProfileStatus::Nonconstant);
  ASSERT_EQ(prof.witness_pair.size(), 2U);
  EXPECT_NE(prof.witness_pair[0].value, prof.witness_pair[1].value);
  EXPECT_EQ(prof.restriction_failures, 0U);
  bool cubic = false;
  for (const auto& f : prof.fields) {
    if (f.explicit_points > 0) {
      cubic = true;
      EXPECT_EQ(f.values.size(), 2U) << f.field;
    }
  }
  EXPECT_TRUE(cubic);
}

TEST(Scan, DeterministicForFixedSeed) {
  ScanOptions o;
  o.degree_bound = 2;
  o.samples = 10;
  o.seed = 42;
  auto a = scan_place(quartic_dp2(), quartic_class(), Place::finite(Prime(2)), o);
  o.parallel = false;
  auto b = scan_place(quartic_dp2(), quartic_class(), Place::finite(Prime(2)), o);
  EXPECT_EQ(a, b);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Scan, RealPlace) {
  PlaceProfile prof = scan_real(quartic_dp2(), quartic_class(), 50, 1);
  EXPECT_EQ(prof.status, ProfileStatus::Constant);
  ASSERT_TRUE(prof.c_v);
  EXPECT_TRUE(prof.c_v->is_zero());
}

TEST(Pullback, AgreesWithTargetClass) {
  Scenario s = load_scenario("dp2-chatelet-cover");
  ASSERT_FALSE(s.classes.empty());
  const QuaternionClass& A = s.classes[0];
  ASSERT_TRUE(A.is_pulled_back());
  EXPECT_EQ(A.origin(), "pulled_back(cover)");
  for (std::int64_t p : {3, 5}) {
    CoherenceCheck c = pullback_coherence(s.variety, A, LocalField::qp(Prime(p)), 10, 1);
    EXPECT_EQ(c.points, 10U);
    EXPECT_EQ(c.mismatches, 0U);
  }
}
