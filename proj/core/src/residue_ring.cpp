#include "obstructor/residue_ring.hpp"

#include <cmath>
#include <stdexcept>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

int max_exponent(std::uint64_t p) {
  int m = 0;
  unsigned __int128 acc = 1;
  while (acc * p < (static_cast<unsigned __int128>(1) << 62)) {
    acc *= p;
    ++m;
  }
  return m;
}

std::uint64_t reduce_integer(const Integer& n, std::uint64_t mod) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), mod);
  return r.get_ui();
}

}  // namespace

int ResidueRing::max_digits(const LocalField& field) {
  return field.e() * max_exponent(static_cast<std::uint64_t>(field.prime().value()));
}

ResidueRing::ResidueRing(const LocalField& field, int digits) : field_(field) {
  e_ = field.e();
  f_ = field.f();
  if (e_ * f_ > kMaxDegree) throw std::invalid_argument("residue ring supports degree <= 8");
  p_ = static_cast<std::uint64_t>(field.prime().value());
  q_ = field.residue_field().size();
  const int cap = max_exponent(p_);
  m_ = std::max(1, std::min(cap, (std::max(digits, 1) + e_ - 1) / e_));
  mod_ = 1;
  for (int i = 0; i < m_; ++i) mod_ *= p_;
  const FieldDescriptor& d = field.descriptor();
  for (int j = 0; j < f_; ++j) g_neg_[j] = reduce_integer(-d.unramified_poly[j], mod_);
  for (int i = 0; i < e_; ++i) {
    for (int j = 0; j < f_; ++j) e_neg_[i][j] = reduce_integer(-d.eisenstein_poly[i][j], mod_);
  }
  pi_powers_count_ = std::min<int>(static_cast<int>(pi_powers_.size()), precision() + 1);
  pi_powers_[0] = one();
  Element pi{};
  if (e_ == 1) {
    // pi = -a_0 lies in T.
    for (int j = 0; j < f_; ++j) pi.c[j] = e_neg_[0][j];
  } else {
    pi.c[static_cast<std::size_t>(f_)] = 1;
  }
  for (int t = 1; t < pi_powers_count_; ++t) pi_powers_[t] = mul(pi_powers_[t - 1], pi);
  if (pi_powers_count_ > e_) {
    // pi^e = p * w with w a unit.
    Element w = pi_powers_[e_];
    for (int k = 0; k < e_ * f_; ++k) w.c[k] /= p_;
    w_inv_ = inverse(w);
  }
}

ResidueRing::Element ResidueRing::one() const {
  Element r{};
  r.c[0] = 1 % mod_;
  return r;
}

ResidueRing::Element ResidueRing::from_int(std::int64_t n) const {
  Element r{};
  const auto m = static_cast<std::int64_t>(mod_);
  std::int64_t v = n % m;
  if (v < 0) v += m;
  r.c[0] = static_cast<std::uint64_t>(v);
  return r;
}

ResidueRing::Element ResidueRing::from_integer(const Integer& n) const {
  Element r{};
  r.c[0] = reduce_integer(n, mod_);
  return r;
}

ResidueRing::Element ResidueRing::from_element(const LocalFieldElement& x, int required_digits) const {
  if (!x.field().same_as(field_)) throw std::invalid_argument("element from another field");
  if (x.absolute_precision() < required_digits) {
    throw PrecisionError("element known to " + std::to_string(x.absolute_precision()) +
                         " digits, " + std::to_string(required_digits) + " required");
  }
  Element r{};
  const auto& coeffs = x.coefficients();
  for (int k = 0; k < e_ * f_; ++k) {
    const PadicNumber& c = coeffs[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (c.valuation() < 0) throw std::invalid_argument("reduction of a non-integral element");
    if (c.valuation() >= m_) continue;
    Integer v = c.unit() * prime_power(c.prime(), c.valuation());
    r.c[static_cast<std::size_t>(k)] = reduce_integer(v, mod_);
  }
  return r;
}

LocalFieldElement ResidueRing::to_element(const Element& x) const {
  std::vector<PadicNumber> coeffs;
  coeffs.reserve(static_cast<std::size_t>(e_ * f_));
  for (int k = 0; k < e_ * f_; ++k) {
    coeffs.push_back(PadicNumber::from_integer(Integer(static_cast<unsigned long>(x.c[k])),
                                               field_.prime(), field_.precision()));
  }
  return field_.element(std::move(coeffs));
}

ResidueRing::Element ResidueRing::add(const Element& a, const Element& b) const {
  Element r;
  for (int k = 0; k < e_ * f_; ++k) r.c[k] = addm(a.c[k], b.c[k]);
  return r;
}

ResidueRing::Element ResidueRing::neg(const Element& a) const {
  Element r;
  for (int k = 0; k < e_ * f_; ++k) r.c[k] = a.c[k] == 0 ? 0 : mod_ - a.c[k];
  return r;
}

ResidueRing::Element ResidueRing::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

// Reduces a T-polynomial of length len (< 2f) modulo g into out[0..f).
void ResidueRing::reduce_t(const std::uint64_t* in, int len, std::uint64_t* out) const {
  std::array<std::uint64_t, 2 * kMaxDegree> tmp{};
  for (int j = 0; j < len; ++j) tmp[j] = in[j];
  for (int j = len - 1; j >= f_; --j) {
    const std::uint64_t t = tmp[j];
    if (t == 0) continue;
    tmp[j] = 0;
    for (int k = 0; k < f_; ++k) tmp[j - f_ + k] = addm(tmp[j - f_ + k], mulm(t, g_neg_[k]));
  }
  for (int j = 0; j < f_; ++j) out[j] = tmp[j];
}

// out += a * b in T.
void ResidueRing::tmul_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  if (f_ == 1) {
    out[0] = addm(out[0], mulm(a[0], b[0]));
    return;
  }
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] = addm(prod[i + j], mulm(a[i], b[j]));
  }
  std::array<std::uint64_t, kMaxDegree> red{};
  reduce_t(prod.data(), 2 * f_ - 1, red.data());
  for (int j = 0; j < f_; ++j) out[j] = addm(out[j], red[j]);
}

ResidueRing::Element ResidueRing::mul(const Element& a, const Element& b) const {
  if (e_ == 1 && f_ == 1) {
    Element r{};
    r.c[0] = mulm(a.c[0], b.c[0]);
    return r;
  }
  // prod[i] is a T-element (f coords) for pi^i, i < 2e-1.
  std::array<std::array<std::uint64_t, kMaxDegree>, 2 * kMaxDegree> prod{};
  for (int i1 = 0; i1 < e_; ++i1) {
    for (int i2 = 0; i2 < e_; ++i2) {
      tmul_add(&a.c[static_cast<std::size_t>(i1 * f_)], &b.c[static_cast<std::size_t>(i2 * f_)],
               prod[i1 + i2].data());
    }
  }
  for (int i = 2 * e_ - 2; i >= e_; --i) {
    std::array<std::uint64_t, kMaxDegree> t = prod[i];
    prod[i] = {};
    for (int k = 0; k < e_; ++k) tmul_add(t.data(), e_neg_[k].data(), prod[i - e_ + k].data());
  }
  Element r{};
  for (int i = 0; i < e_; ++i) {
    for (int j = 0; j < f_; ++j) r.c[static_cast<std::size_t>(i * f_ + j)] = prod[i][j];
  }
  return r;
}

ResidueRing::Element ResidueRing::mul_pi(const Element& a) const {
  if (e_ == 1) return mul(a, pi_powers_[1]);
  Element r{};
  for (int i = e_ - 1; i >= 1; --i) {
    for (int j = 0; j < f_; ++j) r.c[i * f_ + j] = a.c[(i - 1) * f_ + j];
  }
  const std::uint64_t* top = &a.c[static_cast<std::size_t>((e_ - 1) * f_)];
  for (int k = 0; k < e_; ++k) tmul_add(top, e_neg_[k].data(), &r.c[static_cast<std::size_t>(k * f_)]);
  return r;
}

ResidueRing::Element ResidueRing::div_pi(const Element& a) const {
  Element y = e_ == 1 ? a : mul(a, pi_powers_[e_ - 1]);
  for (int k = 0; k < e_ * f_; ++k) {
    if (y.c[k] % p_ != 0) throw DomainError("division by pi of a unit");
    y.c[k] /= p_;
  }
  return mul(y, w_inv_);
}

ResidueRing::Element ResidueRing::pow(const Element& a, unsigned n) const {
  Element acc = one();
  Element base = a;
  while (n > 0) {
    if (n & 1U) acc = mul(acc, base);
    n >>= 1U;
    if (n > 0) base = mul(base, base);
  }
  return acc;
}

ResidueRing::Element ResidueRing::inverse(const Element& a) const {
  if (residue_index(a) == 0) throw DomainError("inverse of a non-unit in residue ring");
  const ResidueField& k = field_.residue_field();
  ResidueField::Element r(static_cast<std::size_t>(f_));
  for (int j = 0; j < f_; ++j) r[j] = static_cast<std::int64_t>(a.c[j] % p_);
  const ResidueField::Element rinv = k.inverse(r);
  Element y{};
  for (int j = 0; j < f_; ++j) y.c[j] = static_cast<std::uint64_t>(rinv[j]);
  const Element two = from_int(2);
  for (int known = 1; known < precision(); known *= 2) {
    y = mul(y, sub(two, mul(a, y)));
  }
  return y;
}

int ResidueRing::valuation(const Element& a) const {
  int best = precision();
  for (int i = 0; i < e_; ++i) {
    for (int j = 0; j < f_; ++j) {
      std::uint64_t c = a.c[i * f_ + j];
      if (c == 0) continue;
      int v = 0;
      while (c % p_ == 0) {
        c /= p_;
        ++v;
      }
      best = std::min(best, e_ * v + i);
    }
  }
  return best;
}

ResidueRing::Element ResidueRing::truncate(const Element& a, int k) const {
  Element r{};
  for (int i = 0; i < e_; ++i) {
    const int need = k - i <= 0 ? 0 : (k - i + e_ - 1) / e_;
    std::uint64_t m = 1;
    for (int t = 0; t < std::min(need, m_); ++t) m *= p_;
    for (int j = 0; j < f_; ++j) {
      r.c[i * f_ + j] = need >= m_ ? a.c[i * f_ + j] : a.c[i * f_ + j] % m;
    }
  }
  return r;
}

ResidueRing::Element ResidueRing::digit(std::uint64_t index) const {
  Element r{};
  for (int j = 0; j < f_; ++j) {
    r.c[j] = index % p_;
    index /= p_;
  }
  return r;
}

std::uint64_t ResidueRing::residue_index(const Element& a) const {
  // Residue of a mod pi is carried by the i = 0 coordinates.
  std::uint64_t idx = 0;
  for (int j = f_ - 1; j >= 0; --j) idx = idx * p_ + a.c[j] % p_;
  return idx;
}

const ResidueRing::Element& ResidueRing::pi_power(int t) const {
  if (t < 0 || t >= pi_powers_count_) throw std::out_of_range("pi power beyond ring precision");
  return pi_powers_[static_cast<std::size_t>(t)];
}

}  // namespace obstructor
