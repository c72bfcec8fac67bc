#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace obstructor {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kDefaultPrecision = 60;
// Absolute precision reported for an exact zero.
inline constexpr int kInfinitePrecision = std::numeric_limits<int>::max() / 8;

bool is_prime(std::int64_t n);

class Prime {
 public:
  explicit Prime(std::int64_t value);

  std::int64_t value() const noexcept { return value_; }
  unsigned long ui() const noexcept { return static_cast<unsigned long>(value_); }

  friend bool operator==(const Prime&, const Prime&) = default;
  friend auto operator<=>(const Prime&, const Prime&) = default;

 private:
  std::int64_t value_;
};

// p^k for k >= 0. Cached per thread.
const Integer& prime_power(const Prime& p, int k);

// v_p(n) for n != 0.
int valuation(const Integer& n, const Prime& p);
int valuation(const Rational& r, const Prime& p);

// Element of Q_p known to a bounded number of digits.
//
// A nonzero value is p^valuation * unit with unit in [1, p^precision) coprime to p.
// A value indistinguishable from 0 is the ZERO marker, which records the absolute
// precision to which it is known to vanish; exact zero has infinite absolute precision.
class PadicNumber {
 public:
  static PadicNumber exact_zero(const Prime& p);
  static PadicNumber zero_mod(const Prime& p, int absolute_precision);
  static PadicNumber from_integer(const Integer& n, const Prime& p,
                                  int precision = kDefaultPrecision);
  static PadicNumber from_rational(const Integer& n, const Integer& d, const Prime& p,
                                   int precision = kDefaultPrecision);
  static PadicNumber from_rational(const Rational& r, const Prime& p,
                                   int precision = kDefaultPrecision);
  // p^valuation * unit with `precision` unit digits; `unit` may carry extra factors of p.
  static PadicNumber from_parts(const Prime& p, int valuation, const Integer& unit,
                                int precision);

  const Prime& prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return zero_; }
  bool is_exact_zero() const noexcept { return zero_ && bound_ >= kInfinitePrecision; }
  int valuation() const;
  int precision() const noexcept { return zero_ ? 0 : precision_; }
  int absolute_precision() const noexcept { return zero_ ? bound_ : bound_ + precision_; }
  const Integer& unit() const noexcept { return unit_; }
  bool is_integral() const noexcept { return zero_ || bound_ >= 0; }

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);
  PadicNumber inverse() const;
  // x * p^k
  PadicNumber shifted(int k) const;
  // Forget digits at and beyond absolute position k.
  PadicNumber truncated(int absolute_precision) const;

  // Representative in [0, p^k) of an integral value; needs absolute precision >= k.
  Integer residue(int k) const;
  // Representative of p^valuation * unit as a rational (balanced unit), for display.
  Rational approximation() const;
  std::string to_string() const;

  friend bool operator==(const PadicNumber&, const PadicNumber&);

 private:
  PadicNumber(const Prime& p) : p_(p) {}

  Prime p_;
  bool zero_ = true;
  // Valuation for nonzero values; vanishing bound for ZERO.
  int bound_ = kInfinitePrecision;
  int precision_ = 0;
  Integer unit_;
};

enum class ArithOp { Add, Mul, Inv, Neg };
// Single entry point for the four ring operations; `y` is ignored for unary ops.
PadicNumber arith(const PadicNumber& x, const PadicNumber& y, ArithOp op);

bool is_square_qp(const PadicNumber& x);

// Legendre symbol of a unit u mod p by Euler's criterion, p odd: +1 or -1.
int legendre(const Integer& u, const Prime& p);

}  // namespace obstructor
