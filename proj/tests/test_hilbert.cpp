#include <gtest/gtest.h>

#include <random>

#include "obstructor/errors.hpp"
#include "obstructor/extensions.hpp"
#include "obstructor/hilbert.hpp"
#include "oracles.hpp"

using namespace obstructor;

TEST(Hilbert, RealPlace) {
  EXPECT_EQ(hilbert_real(Rational(-1), Rational(-1)), QmodZ::half());
  EXPECT_TRUE(hilbert_real(Rational(-1), Rational(3)).is_zero());
  EXPECT_TRUE(hilbert_real(Rational(2), Rational(-5)).is_zero());
  EXPECT_EQ(hilbert_real(-0.5, -2.0), QmodZ::half());
}

TEST(Hilbert, SmallCasesAgainstResidueSearch) {
  // (-1,-1)_2: x^2 + y^2 + z^2 has no primitive zero mod 8.
  EXPECT_FALSE(oracle::diagonal_conic_has_primitive_solution(1, 1, 1, 2, 3));
  EXPECT_EQ(hilbert_qp(Rational(-1), Rational(-1), Prime(2)), QmodZ::half());
  // (2, 3)_3: z^2 = 2x^2 + 3y^2 has no primitive zero mod 9.
  EXPECT_FALSE(oracle::diagonal_conic_has_primitive_solution(2, 3, -1, 3, 2));
  EXPECT_EQ(hilbert_qp(Rational(2), Rational(3), Prime(3)), QmodZ::half());
  EXPECT_TRUE(hilbert_qp(Rational(-1), Rational(5), Prime(2)).is_zero());
  EXPECT_TRUE(hilbert_qp(Rational(2), Rational(3), Prime(5)).is_zero());
  EXPECT_EQ(hilbert_qp(Rational(5), Rational(2), Prime(5)), QmodZ::half());
}

TEST(Hilbert, ClosedFormAgreesWithConicSearchOverQp) {
  std::mt19937_64 rng(1);
  for (std::int64_t p : {2, 3, 5, 7}) {
    const LocalField F = LocalField::qp(Prime(p));
    for (int i = 0; i < 60; ++i) {
      const long a = static_cast<long>(rng() % 200) - 100, b = static_cast<long>(rng() % 200) - 100;
      if (a == 0 || b == 0) continue;
      ConicOptions o;
      o.force_conic = true;
      SymbolResult r = hilbert_ext_detailed(Rational(a), F.from_integer(b), o);
      EXPECT_EQ(r.value, hilbert_qp(Rational(a), Rational(b), Prime(p))) << a << "," << b << " at " << p;
      EXPECT_EQ(r.path, SymbolPath::ConicSearch);
      if (r.value.is_zero() && r.witness) {
        const auto& [z, u, w] = *r.witness;
        const LocalFieldElement res = z * z - F.from_integer(a) * u * u - F.from_integer(b) * w * w;
        EXPECT_TRUE(res.is_zero()) << res.valuation() << " " << z.to_string() << " " << u.to_string() << " " << w.to_string();
      }
    }
  }
}

TEST(Hilbert, ProductFormula) {
  EXPECT_TRUE(product_formula_check(2, 3));
  EXPECT_TRUE(product_formula_check(-1, -1));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    Rational a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 30) + 1);
    Rational b(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 30) + 1);
    a.canonicalize();
    b.canonicalize();
    if (a == 0 || b == 0) continue;
    QmodZ sum = hilbert_real(a, b);
    for (const Prime& p : relevant_primes(a, b)) sum += hilbert_qp(a, b, p);
    EXPECT_TRUE(sum.is_zero()) << a.get_str() << "," << b.get_str();
  }
}

TEST(Hilbert, RestrictionMultipliesByDegree) {
  std::mt19937_64 rng(4);
  for (std::int64_t p : {2, 3, 5}) {
    for (int d : {2, 3}) {
      for (const LocalField& S : enumerate_extensions(Prime(p), d).entries) {
        for (int i = 0; i < 3; ++i) {
          const long a = static_cast<long>(rng() % 200) - 100, b = static_cast<long>(rng() % 200) - 100;
          if (a == 0 || b == 0) continue;
          const QmodZ want = d * hilbert_qp(Rational(a), Rational(b), Prime(p));
          EXPECT_EQ(hilbert_ext(Rational(a), S.from_integer(b)), want) << S.name() << " " << a << "," << b;
        }
      }
    }
  }
}

TEST(Hilbert, ShortcutPaths) {
  // Over Q_p the closed form wins; the shortcuts show up over extensions.
  const LocalField R5 = LocalField::totally_ramified(Prime(5), {-5, 0, 1});
  EXPECT_EQ(hilbert_ext_detailed(Rational(2), LocalField::qp(Prime(5)).from_integer(5)).path, SymbolPath::Qp);
  SymbolResult sq = hilbert_ext_detailed(Rational(4), R5.from_integer(7));
  EXPECT_TRUE(sq.value.is_zero());
  EXPECT_EQ(sq.path, SymbolPath::Square);
  // 2 is not a square mod 5, so S(sqrt 2)/S is unramified: the symbol is the parity of val(x).
  SymbolResult un = hilbert_ext_detailed(Rational(2), R5.uniformizer());
  EXPECT_EQ(un.value, QmodZ::half());
  EXPECT_EQ(un.path, SymbolPath::UnramifiedParity);
  EXPECT_TRUE(hilbert_ext(Rational(2), R5.from_integer(5)).is_zero());
  const LocalField S = LocalField::totally_ramified(Prime(2), {-2, 0, 0, 1});
  SymbolResult cs = hilbert_ext_detailed(Rational(-1), S.from_integer(3));
  EXPECT_EQ(cs.value, 3 * hilbert_qp(Rational(-1), Rational(3), Prime(2)));
}

TEST(Place, ParseAndOrder) {
  EXPECT_TRUE(Place::parse("inf").is_real());
  EXPECT_TRUE(Place::parse("real").is_real());
  EXPECT_EQ(Place::parse("13").prime(), Prime(13));
  EXPECT_LT(Place::parse("2"), Place::parse("3"));
  EXPECT_LT(Place::parse("1091"), Place::real());
  EXPECT_EQ(Place::real().to_string(), "inf");
  EXPECT_ANY_THROW(Place::parse("6"));
}
