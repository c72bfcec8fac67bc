#include "obstructor/padic.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "obstructor/errors.hpp"

namespace obstructor {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t value) : value_(value) {
  if (!is_prime(value)) {
    throw std::invalid_argument("not a prime: " + std::to_string(value));
  }
}

const Integer& prime_power(const Prime& p, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent in prime_power");
  thread_local std::unordered_map<std::int64_t, std::deque<Integer>> cache;
  auto& powers = cache[p.value()];
  if (powers.empty()) powers.emplace_back(1);
  while (static_cast<int>(powers.size()) <= k) {
    powers.emplace_back(powers.back() * p.ui());
  }
  return powers[static_cast<std::size_t>(k)];
}

int valuation(const Integer& n, const Prime& p) {
  if (n == 0) throw std::invalid_argument("valuation of 0");
  if (!mpz_divisible_ui_p(n.get_mpz_t(), p.ui())) return 0;
  Integer rest;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), Integer(p.value()).get_mpz_t()));
}

int valuation(const Rational& r, const Prime& p) {
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

namespace {

// Strips p from `unit`, reduces mod p^(precision), returns ZERO when nothing survives.
PadicNumber canonical(const Prime& p, int val, Integer unit, int precision) {
  if (precision <= 0) return PadicNumber::zero_mod(p, val);
  const Integer& modulus = prime_power(p, precision);
  mpz_fdiv_r(unit.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
  if (unit == 0) return PadicNumber::zero_mod(p, val + precision);
  int k = 0;
  if (mpz_divisible_ui_p(unit.get_mpz_t(), p.ui())) {
    k = static_cast<int>(
        mpz_remove(unit.get_mpz_t(), unit.get_mpz_t(), Integer(p.value()).get_mpz_t()));
  }
  return PadicNumber::from_parts(p, val + k, unit, precision - k);
}

}  // namespace

PadicNumber PadicNumber::exact_zero(const Prime& p) { return PadicNumber(p); }

PadicNumber PadicNumber::zero_mod(const Prime& p, int absolute_precision) {
  PadicNumber z(p);
  z.bound_ = std::min(absolute_precision, kInfinitePrecision);
  return z;
}

PadicNumber PadicNumber::from_parts(const Prime& p, int valuation, const Integer& unit,
                                    int precision) {
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  if (mpz_divisible_ui_p(unit.get_mpz_t(), p.ui())) {
    return canonical(p, valuation, unit, precision);
  }
  PadicNumber x(p);
  x.zero_ = false;
  x.bound_ = valuation;
  x.precision_ = precision;
  x.unit_ = unit;
  const Integer& modulus = prime_power(p, precision);
  if (x.unit_ < 0 || x.unit_ >= modulus) {
    mpz_fdiv_r(x.unit_.get_mpz_t(), x.unit_.get_mpz_t(), modulus.get_mpz_t());
  }
  return x;
}

PadicNumber PadicNumber::from_integer(const Integer& n, const Prime& p, int precision) {
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  if (n == 0) return exact_zero(p);
  return canonical(p, 0, n, precision + obstructor::valuation(n, p));
}

PadicNumber PadicNumber::from_rational(const Integer& n, const Integer& d, const Prime& p,
                                       int precision) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  if (n == 0) return exact_zero(p);
  Integer num = n;
  Integer den = d;
  Integer pz(p.value());
  int vn = static_cast<int>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
  int vd = static_cast<int>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  const Integer& modulus = prime_power(p, precision);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  return from_parts(p, vn - vd, num * inv, precision);
}

PadicNumber PadicNumber::from_rational(const Rational& r, const Prime& p, int precision) {
  return from_rational(r.get_num(), r.get_den(), p, precision);
}

int PadicNumber::valuation() const {
  if (zero_) throw PrecisionError("valuation of a value that is zero at precision");
  return bound_;
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  PadicNumber r = *this;
  r.unit_ = prime_power(p_, precision_) - unit_;
  return r;
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw std::invalid_argument("p-adic operands over different primes");
  if (x.is_exact_zero()) return y;
  if (y.is_exact_zero()) return x;
  const int abs_prec = std::min(x.absolute_precision(), y.absolute_precision());
  if (x.zero_ && y.zero_) return PadicNumber::zero_mod(x.p_, abs_prec);
  if (x.zero_ || y.zero_) {
    const PadicNumber& v = x.zero_ ? y : x;
    if (v.bound_ >= abs_prec) return PadicNumber::zero_mod(x.p_, abs_prec);
    return v.truncated(abs_prec);
  }
  const int m = std::min(x.bound_, y.bound_);
  Integer s = x.unit_ * prime_power(x.p_, x.bound_ - m) + y.unit_ * prime_power(x.p_, y.bound_ - m);
  return canonical(x.p_, m, std::move(s), abs_prec - m);
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw std::invalid_argument("p-adic operands over different primes");
  if (x.is_exact_zero() || y.is_exact_zero()) return PadicNumber::exact_zero(x.p_);
  if (x.zero_ && y.zero_) return PadicNumber::zero_mod(x.p_, x.bound_ + y.bound_);
  if (x.zero_) return PadicNumber::zero_mod(x.p_, x.bound_ + y.bound_);
  if (y.zero_) return PadicNumber::zero_mod(x.p_, x.bound_ + y.bound_);
  const int prec = std::min(x.precision_, y.precision_);
  Integer u = x.unit_ * y.unit_;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), prime_power(x.p_, prec).get_mpz_t());
  PadicNumber r(x.p_);
  r.zero_ = false;
  r.bound_ = x.bound_ + y.bound_;
  r.precision_ = prec;
  r.unit_ = std::move(u);
  return r;
}

PadicNumber PadicNumber::inverse() const {
  if (zero_) throw DomainError("inversion of a value that is zero at precision");
  PadicNumber r(p_);
  r.zero_ = false;
  r.bound_ = -bound_;
  r.precision_ = precision_;
  mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), prime_power(p_, precision_).get_mpz_t());
  return r;
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) { return x * y.inverse(); }

PadicNumber PadicNumber::shifted(int k) const {
  PadicNumber r = *this;
  if (is_exact_zero()) return r;
  r.bound_ += k;
  return r;
}

PadicNumber PadicNumber::truncated(int absolute_precision) const {
  if (absolute_precision >= this->absolute_precision()) return *this;
  if (zero_) return zero_mod(p_, absolute_precision);
  if (absolute_precision <= bound_) return zero_mod(p_, absolute_precision);
  return canonical(p_, bound_, unit_, absolute_precision - bound_);
}

Integer PadicNumber::residue(int k) const {
  if (k <= 0) return 0;
  if (absolute_precision() < k) {
    throw PrecisionError("residue mod p^" + std::to_string(k) + " needs more digits");
  }
  if (zero_) return 0;
  if (bound_ < 0) throw std::invalid_argument("residue of a non-integral p-adic number");
  if (bound_ >= k) return 0;
  Integer r = unit_ * prime_power(p_, bound_);
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), prime_power(p_, k).get_mpz_t());
  return r;
}

Rational PadicNumber::approximation() const {
  if (zero_) return 0;
  const Integer& modulus = prime_power(p_, precision_);
  Integer u = unit_;
  if (2 * u > modulus) u -= modulus;
  Rational r(u);
  if (bound_ >= 0) {
    r *= prime_power(p_, bound_);
  } else {
    r /= prime_power(p_, -bound_);
  }
  r.canonicalize();
  return r;
}

std::string PadicNumber::to_string() const {
  std::ostringstream out;
  if (is_exact_zero()) {
    out << "0";
  } else if (zero_) {
    out << "O(" << p_.value() << "^" << bound_ << ")";
  } else {
    out << approximation().get_str() << " + O(" << p_.value() << "^" << absolute_precision() << ")";
  }
  return out.str();
}

bool operator==(const PadicNumber& x, const PadicNumber& y) {
  return x.p_ == y.p_ && x.zero_ == y.zero_ && x.bound_ == y.bound_ &&
         x.precision_ == y.precision_ && (x.zero_ || x.unit_ == y.unit_);
}

PadicNumber arith(const PadicNumber& x, const PadicNumber& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return x + y;
    case ArithOp::Mul:
      return x * y;
    case ArithOp::Inv:
      return x.inverse();
    case ArithOp::Neg:
      return -x;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

int legendre(const Integer& u, const Prime& p) {
  if (p.value() == 2) throw std::invalid_argument("Legendre symbol needs an odd prime");
  Integer pz(p.value());
  Integer r;
  Integer e((p.value() - 1) / 2);
  mpz_powm(r.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
  if (r == 1) return 1;
  if (r == p.value() - 1) return -1;
  throw std::invalid_argument("Legendre symbol of a non-unit");
}

bool is_square_qp(const PadicNumber& x) {
  if (x.is_zero()) throw PrecisionError("square test of a value that is zero at precision");
  const bool two = x.prime().value() == 2;
  const int needed = two ? 3 : 1;
  if (x.precision() < needed) {
    throw PrecisionError("square test needs " + std::to_string(needed) + " unit digits");
  }
  if (x.valuation() % 2 != 0) return false;
  if (two) return mpz_fdiv_ui(x.unit().get_mpz_t(), 8) == 1;
  return legendre(x.unit(), x.prime()) == 1;
}

}  // namespace obstructor
