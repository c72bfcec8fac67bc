#include "obstructor/residue_field.hpp"

#include <stdexcept>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr != 0) {
    const std::int64_t q = r / nr;
    t = t - q * nt;
    std::swap(t, nt);
    r = r - q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw DomainError("non-invertible residue");
  return mod(t, p);
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly poly_mod(FpPoly a, const FpPoly& m, std::int64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::int64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::int64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = mod(a[shift + i] - mulmod(c, m[i], p), p);
    }
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = mod(r[i + j] + mulmod(a[i], b[j], p), p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::int64_t> poly, std::int64_t p) {
  FpPoly g;
  for (auto c : poly) g.push_back(mod(c, p));
  trim(g);
  if (g.size() < 2) return false;
  const std::size_t f = g.size() - 1;
  if (f == 1) return true;
  // Ben-Or: no factor of degree i divides g for i <= f/2.
  FpPoly x = {0, 1};
  FpPoly h = x;
  for (std::size_t i = 1; i <= f / 2; ++i) {
    FpPoly base = h;
    FpPoly acc = {1};
    for (std::int64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, g, p);
      base = poly_mulmod(base, base, g, p);
    }
    h = acc;
    FpPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = mod(diff[1] - 1, p);
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(g, diff, p).size() != 1) return false;
  }
  return true;
}

FpPoly canonical_unramified_polynomial(std::int64_t p, int f) {
  if (f < 1) throw std::invalid_argument("unramified degree must be positive");
  if (f == 1) return {mod(-1, p), 1};
  std::uint64_t total = 1;
  for (int i = 0; i < f; ++i) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // idx enumerates (c_{f-1}, ..., c_0) with c_{f-1} most significant.
    FpPoly g(static_cast<std::size_t>(f) + 1, 0);
    g[static_cast<std::size_t>(f)] = 1;
    std::uint64_t rest = idx;
    for (int j = 0; j < f; ++j) {
      g[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    if (is_irreducible_mod_p(g, p)) return g;
  }
  throw std::logic_error("no irreducible polynomial found");
}

ResidueField::ResidueField(std::int64_t p, FpPoly modulus) : p_(p), modulus_(std::move(modulus)) {
  for (auto& c : modulus_) c = mod(c, p);
  trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) {
    throw std::invalid_argument("residue field modulus must be monic of positive degree");
  }
  f_ = static_cast<int>(modulus_.size()) - 1;
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ *= static_cast<std::uint64_t>(p);
}

ResidueField::Element ResidueField::one() const {
  Element e = zero();
  e[0] = 1;
  return e;
}

ResidueField::Element ResidueField::add(const Element& a, const Element& b) const {
  Element r(static_cast<std::size_t>(f_));
  for (int i = 0; i < f_; ++i) r[i] = mod(a[i] + b[i], p_);
  return r;
}

ResidueField::Element ResidueField::sub(const Element& a, const Element& b) const {
  Element r(static_cast<std::size_t>(f_));
  for (int i = 0; i < f_; ++i) r[i] = mod(a[i] - b[i], p_);
  return r;
}

ResidueField::Element ResidueField::neg(const Element& a) const { return sub(zero(), a); }

ResidueField::Element ResidueField::mul(const Element& a, const Element& b) const {
  if (f_ == 1) return {mulmod(a[0], b[0], p_)};
  FpPoly r = poly_mulmod(a, b, modulus_, p_);
  r.resize(static_cast<std::size_t>(f_), 0);
  return r;
}

ResidueField::Element ResidueField::pow(const Element& a, std::uint64_t e) const {
  Element acc = one();
  Element base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

ResidueField::Element ResidueField::inverse(const Element& a) const {
  if (is_zero(a)) throw DomainError("inverse of zero in residue field");
  return pow(a, q_ - 2);
}

bool ResidueField::is_zero(const Element& a) const {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

bool ResidueField::is_square(const Element& a) const {
  if (p_ == 2 || is_zero(a)) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

ResidueField::Element ResidueField::element_at(std::uint64_t index) const {
  Element e(static_cast<std::size_t>(f_));
  for (int j = 0; j < f_; ++j) {
    e[j] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p_));
    index /= static_cast<std::uint64_t>(p_);
  }
  return e;
}

std::uint64_t ResidueField::index_of(const Element& a) const {
  std::uint64_t idx = 0;
  for (int j = f_ - 1; j >= 0; --j) idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(a[j]);
  return idx;
}

}  // namespace obstructor
