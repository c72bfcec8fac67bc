#include <gtest/gtest.h>

#include <random>

#include "obstructor/errors.hpp"
#include "obstructor/padic.hpp"
#include "obstructor/qmodz.hpp"
#include "oracles.hpp"

using namespace obstructor;

TEST(Padic, FromRationalSplitsValuationAndUnit) {
  const Prime two(2);
  PadicNumber x = PadicNumber::from_rational(48, 1, two);
  EXPECT_EQ(x.valuation(), 4);
  EXPECT_EQ(x.unit(), 3);

  EXPECT_TRUE(PadicNumber::from_rational(0, 1, Prime(5)).is_exact_zero());

  // -72 = 2^3 * (-9); the stored unit is -9 reduced mod 2^N.
  PadicNumber y = PadicNumber::from_rational(-72, 1, two);
  EXPECT_EQ(y.valuation(), 3);
  Integer r = (y.unit() + 9) % prime_power(two, y.precision());
  EXPECT_EQ(r, 0);

  PadicNumber q = PadicNumber::from_rational(5, 12, Prime(3));
  EXPECT_EQ(q.valuation(), -1);
}

TEST(Padic, CancellationLeavesZeroMarker) {
  const Prime two(2);
  PadicNumber a = PadicNumber::from_integer(48, two);
  PadicNumber z = a + (-a);
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW((void)(PadicNumber::from_integer(1, two) / z), DomainError);
}

TEST(Padic, InverseOfThreeModTwoToTheTen) {
  const Prime two(2);
  // Reference inverse by search.
  std::int64_t ref = -1;
  for (std::int64_t k = 0; k < 1024; ++k) {
    if (3 * k % 1024 == 1) ref = k;
  }
  ASSERT_EQ(ref, 683);
  PadicNumber inv = PadicNumber::from_integer(3, two, 10).inverse();
  EXPECT_EQ(inv.valuation(), 0);
  EXPECT_EQ(inv.residue(10), ref);
}

TEST(Padic, InverseIsCertifiedToItsPrecision) {
  std::mt19937_64 rng(7);
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    const Prime P(p);
    for (int i = 0; i < 50; ++i) {
      std::int64_t n = static_cast<std::int64_t>(rng() % 100000) + 1;
      PadicNumber x = PadicNumber::from_integer(n, P, 20);
      PadicNumber prod = x * x.inverse();
      PadicNumber diff = prod - PadicNumber::from_integer(1, P, 20);
      EXPECT_TRUE(diff.is_zero()) << n << " mod " << p;
      EXPECT_GE(diff.absolute_precision(), 20 - 2 * valuation(Integer(n), P));
    }
  }
}

TEST(Padic, ArithmeticMatchesRationals) {
  std::mt19937_64 rng(3);
  for (std::int64_t p : {2, 3, 7}) {
    const Prime P(p);
    for (int i = 0; i < 100; ++i) {
      Rational a(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 50) + 1);
      Rational b(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 50) + 1);
      a.canonicalize();
      b.canonicalize();
      if (a == 0 || b == 0) continue;
      PadicNumber x = PadicNumber::from_rational(a, P), y = PadicNumber::from_rational(b, P);
      for (auto [got, want] : {std::pair{x * y, Rational(a * b)}, std::pair{x / y, Rational(a / b)}}) {
        PadicNumber d = got - PadicNumber::from_rational(want, P);
        EXPECT_TRUE(d.is_zero());
        EXPECT_GE(d.absolute_precision(), 40);
      }
      if (a + b != 0) {
        EXPECT_EQ((x + y).valuation(), valuation(Rational(a + b), P));
      }
    }
  }
}

TEST(Padic, SquareTestAgreesWithResidueSearch) {
  EXPECT_TRUE(is_square_qp(PadicNumber::from_integer(17, Prime(2))));
  EXPECT_FALSE(is_square_qp(PadicNumber::from_integer(2, Prime(2))));
  EXPECT_FALSE(is_square_qp(PadicNumber::from_integer(5, Prime(5))));
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    for (std::int64_t n = -300; n <= 300; ++n) {
      if (n == 0) continue;
      EXPECT_EQ(is_square_qp(PadicNumber::from_integer(n, Prime(p))), oracle::int_is_square_qp(n, p))
          << n << " at " << p;
    }
  }
}

TEST(Padic, LegendreMatchesEuler) {
  for (std::int64_t p : {3, 5, 7, 11, 13, 101}) {
    for (std::int64_t u = 1; u < p; ++u) {
      EXPECT_EQ(legendre(u, Prime(p)), oracle::int_square_mod(u, p) ? 1 : -1);
    }
  }
}

TEST(Padic, RejectsComposites) {
  EXPECT_THROW(Prime(4), std::invalid_argument);
  EXPECT_THROW(Prime(1), std::invalid_argument);
  EXPECT_TRUE(is_prime(1091));
  EXPECT_FALSE(is_prime(1513));
}

TEST(QmodZ, GroupLaw) {
  QmodZ h = QmodZ::half();
  EXPECT_TRUE((h + h).is_zero());
  EXPECT_EQ(3 * h, h);
  EXPECT_TRUE((2 * h).is_zero());
  EXPECT_EQ(QmodZ(1, 3) + QmodZ(2, 3), QmodZ());
  EXPECT_EQ(QmodZ(-1, 4), QmodZ(3, 4));
  EXPECT_EQ(-QmodZ(1, 4), QmodZ(3, 4));
  EXPECT_EQ(QmodZ(5, 2), h);
}

TEST(QmodZ, ParseAndPrint) {
  EXPECT_EQ(QmodZ::parse("1/2"), QmodZ::half());
  EXPECT_EQ(QmodZ::parse("0"), QmodZ());
  EXPECT_EQ(QmodZ(2, 6).to_string(), "1/3");
  EXPECT_EQ(QmodZ().to_string(), "0");
  EXPECT_THROW(QmodZ::parse("x"), std::invalid_argument);
}
