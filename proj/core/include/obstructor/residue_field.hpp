#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace obstructor {

// Polynomials over F_p, coefficients low to high, reduced to [0, p).
using FpPoly = std::vector<std::int64_t>;

bool is_irreducible_mod_p(std::span<const std::int64_t> poly, std::int64_t p);

// Smallest monic irreducible polynomial of degree f mod p, ordering coefficient
// tuples (c_{f-1}, ..., c_0) lexicographically.
FpPoly canonical_unramified_polynomial(std::int64_t p, int f);

// F_q = F_p[t]/(g) with g monic irreducible of degree f.
class ResidueField {
 public:
  using Element = std::vector<std::int64_t>;

  ResidueField(std::int64_t p, FpPoly modulus);

  std::int64_t characteristic() const noexcept { return p_; }
  int degree() const noexcept { return f_; }
  std::uint64_t size() const noexcept { return q_; }

  Element zero() const { return Element(static_cast<std::size_t>(f_), 0); }
  Element one() const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(const Element& a, std::uint64_t e) const;
  Element inverse(const Element& a) const;
  bool is_zero(const Element& a) const;
  // Euler's criterion; every element is a square in characteristic 2.
  bool is_square(const Element& a) const;

  // Elements enumerated by base-p digits of the index.
  Element element_at(std::uint64_t index) const;
  std::uint64_t index_of(const Element& a) const;

 private:
  std::int64_t p_;
  int f_;
  std::uint64_t q_;
  FpPoly modulus_;
};

}  // namespace obstructor
