#include <gtest/gtest.h>

#include <random>
#include <set>

#include "obstructor/errors.hpp"
#include "obstructor/extensions.hpp"
#include "obstructor/local_field.hpp"
#include "obstructor/residue_ring.hpp"
#include "oracles.hpp"

using namespace obstructor;

namespace {

LocalField cube_root_two() { return LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1}); }

LocalFieldElement random_element(const LocalField& S, std::mt19937_64& rng, int max_shift) {
  std::vector<PadicNumber> c;
  for (int i = 0; i < S.degree(); ++i) {
    c.push_back(PadicNumber::from_integer(static_cast<long>(rng() % 101) - 50, S.prime(), S.precision()));
  }
  LocalFieldElement x = S.element(std::move(c));
  if (x.is_zero()) x = S.one();
  return x.shifted(static_cast<int>(rng() % static_cast<unsigned>(max_shift + 1)));
}

}  // namespace

TEST(LocalField, BuildsTowers) {
  LocalField S = cube_root_two();
  EXPECT_EQ(S.e(), 3);
  EXPECT_EQ(S.f(), 1);
  EXPECT_EQ(S.uniformizer().valuation(), 1);
  EXPECT_EQ(S.from_integer(2).valuation(), 3);
  EXPECT_EQ((S.from_integer(160) * S.uniformizer()).valuation(), 16);
  EXPECT_EQ(LocalField::qp(Prime(5)).degree(), 1);

  LocalField U = LocalField::unramified(Prime(2), 2);
  EXPECT_EQ(U.residue_field().size(), 4U);
  EXPECT_EQ(U.from_integer(2).valuation(), 1);
  EXPECT_EQ(U.name(), "Q_2[w]/(w^2 + w + 1)");
  EXPECT_EQ(S.name(), "Q_2(pi), pi^3 - 2 = 0");
}

TEST(LocalField, RejectsBadDefiningData) {
  EXPECT_THROW(LocalField::totally_ramified(Prime(2), {-4, 0, 1}), HypothesisError);
  EXPECT_THROW(LocalField::totally_ramified(Prime(3), {-3, 1, 2}), HypothesisError);
  // T^2 + 1 splits mod 5.
  EXPECT_THROW(LocalField::build(Prime(5), {1, 0, 1}, {{-5}, {1}}), HypothesisError);
}

TEST(LocalField, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(11);
  for (const LocalField& S : {cube_root_two(), LocalField::unramified(Prime(3), 2),
                              LocalField::totally_ramified(Prime(5), {5, 0, 1})}) {
    for (int i = 0; i < 30; ++i) {
      LocalFieldElement x = random_element(S, rng, 2), y = random_element(S, rng, 2);
      EXPECT_EQ((x * y).valuation(), x.valuation() + y.valuation());
      LocalFieldElement q = (x * y) / y - x;
      EXPECT_TRUE(q.is_zero());
      EXPECT_TRUE((x * x.inverse() - S.one()).is_zero());
      EXPECT_TRUE(((x + y) * (x - y) - (x * x - y * y)).is_zero());
    }
  }
}

TEST(LocalField, HenselLiftOfSqrt17) {
  const LocalField Q2 = LocalField::qp(Prime(2));
  LocalPolynomial f{Q2.from_integer(-17), Q2.zero(), Q2.one()};
  LocalFieldElement r = hensel_lift(f, Q2.one());
  EXPECT_TRUE((r * r - Q2.from_integer(17)).is_zero());
  // The lift stays in the class 1 mod 8 fixed by the Newton radius; search for its
  // residue mod 32 among square roots of 17 mod 64.
  std::int64_t expect = -1;
  for (std::int64_t t = 1; t < 32; t += 8) {
    if ((t * t - 17) % 64 == 0) expect = t;
  }
  ASSERT_EQ(expect, 9);
  EXPECT_EQ(r.coefficient(0, 0).residue(5), expect);
  // The other root is 23 mod 32.
  EXPECT_EQ((-r).coefficient(0, 0).residue(5), 23);
  EXPECT_THROW(hensel_lift(f, Q2.from_integer(2)), CriterionError);
}

TEST(LocalField, SquareTestAgreesWithExhaustiveSearch) {
  const LocalField S = cube_root_two();
  EXPECT_FALSE(is_square(S.uniformizer()));
  EXPECT_EQ(is_square(S.from_integer(5)), oracle::is_square_exhaustive(S.from_integer(5)));
  std::mt19937_64 rng(5);
  for (const LocalField& F : {S, LocalField::qp(Prime(2)), LocalField::unramified(Prime(2), 2),
                              LocalField::totally_ramified(Prime(3), {-3, 0, 1}), LocalField::unramified(Prime(5), 2)}) {
    for (int i = 0; i < 25; ++i) {
      LocalFieldElement x = random_element(F, rng, 3);
      EXPECT_EQ(is_square(x), oracle::is_square_exhaustive(x)) << F.name() << " " << x.to_string();
      if (auto r = square_root(x)) {
        EXPECT_TRUE((*r * *r - x).is_zero());
      }
    }
  }
}

TEST(LocalField, NormsFromUnramifiedQuadratic) {
  const LocalField Q5 = LocalField::qp(Prime(5));
  ASSERT_TRUE(generates_unramified_quadratic(Q5, 2));
  EXPECT_TRUE(is_norm_unramified_quadratic(Q5.from_integer(25), 2));
  EXPECT_FALSE(is_norm_unramified_quadratic(Q5.from_integer(5 * 3), 2));
  for (int n = 1; n < 200; ++n) {
    const bool even = valuation(Integer(n), Prime(5)) % 2 == 0;
    EXPECT_EQ(is_norm_unramified_quadratic(Q5.from_integer(n), 2), even) << n;
  }
  // 5 is a square in Q_4, so it no longer generates anything there.
  EXPECT_TRUE(generates_unramified_quadratic(LocalField::qp(Prime(2)), 5));
  EXPECT_FALSE(generates_unramified_quadratic(LocalField::unramified(Prime(2), 2), 5));
}

TEST(ResidueRing, ArithmeticMatchesField) {
  const LocalField S = cube_root_two();
  ResidueRing R(S, 4);
  EXPECT_GE(R.precision(), 4);
  EXPECT_EQ(R.precision() % S.e(), 0);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    LocalFieldElement x = random_element(S, rng, 0), y = random_element(S, rng, 1);
    auto xr = R.from_element(x, R.precision()), yr = R.from_element(y, R.precision());
    LocalFieldElement prod = R.to_element(R.mul(xr, yr));
    LocalFieldElement d = prod - x * y;
    EXPECT_TRUE(d.is_zero() || d.valuation() >= R.precision());
  }
}

TEST(Extensions, CensusCounts) {
  const std::vector<std::tuple<int, int, std::size_t>> cases = {
      {2, 1, 1}, {3, 1, 1}, {2, 2, 7}, {3, 2, 3}, {5, 2, 3}, {7, 2, 3}, {2, 3, 2}, {3, 3, 10}};
  for (auto [p, d, n] : cases) {
    ExtensionCatalog cat = enumerate_extensions(Prime(p), d);
    EXPECT_TRUE(cat.complete);
    EXPECT_EQ(cat.entries.size(), n) << "p=" << p << " d=" << d;
    for (const auto& S : cat.entries) EXPECT_EQ(S.degree(), d);
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
      for (std::size_t j = i + 1; j < cat.entries.size(); ++j) {
        EXPECT_FALSE(isomorphic(cat.entries[i], cat.entries[j])) << cat.entries[i].name() << " ~ " << cat.entries[j].name();
      }
    }
  }
}

TEST(Extensions, QuadraticsOfQ2MatchSquareClasses) {
  // Q_2^*/Q_2^*2 has representatives 1, 3, 5, 7, 2, 6, 10, 14; each quadratic field
  // contains the root of exactly one nontrivial class.
  const std::vector<long> classes = {3, 5, 7, 2, 6, 10, 14};
  std::set<long> seen;
  for (const LocalField& S : enumerate_extensions(Prime(2), 2).entries) {
    std::vector<long> hit;
    for (long d : classes) {
      if (oracle::is_square_exhaustive(S.from_integer(d))) hit.push_back(d);
    }
    ASSERT_EQ(hit.size(), 1U) << S.name();
    seen.insert(hit[0]);
  }
  EXPECT_EQ(seen.size(), classes.size());
}

TEST(Extensions, IsomorphismTest) {
  auto quad = [](long c) { return LocalField::totally_ramified(Prime(2), {c, 0, 1}); };
  EXPECT_TRUE(isomorphic(quad(-2), quad(-34)));
  EXPECT_FALSE(isomorphic(quad(-2), quad(2)));
  EXPECT_FALSE(isomorphic(quad(-2), quad(-6)));
  EXPECT_FALSE(isomorphic(quad(-2), quad(-10)));
  EXPECT_EQ(different_exponent(cube_root_two().descriptor()), 2);
  EXPECT_EQ(different_exponent(quad(-2).descriptor()), 3);
}
