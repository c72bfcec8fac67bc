#pragma once

#include <array>
#include <cstdint>

#include "obstructor/local_field.hpp"

namespace obstructor {

// O_S / p^M O_S = O_S / pi^(eM) with coordinates in the pi^i omega^j basis held
// as machine words mod p^M (p^M < 2^62).
class ResidueRing {
 public:
  static constexpr int kMaxDegree = 8;

  struct Element {
    std::array<std::uint64_t, kMaxDegree> c{};
    friend bool operator==(const Element&, const Element&) = default;
  };

  // Precision is at least `digits` pi-digits when the word size allows, rounded up to a
  // multiple of e; check precision() for the value actually provided.
  ResidueRing(const LocalField& field, int digits);
  static int max_digits(const LocalField& field);

  const LocalField& field() const noexcept { return field_; }
  int precision() const noexcept { return e_ * m_; }
  int e() const noexcept { return e_; }
  int f() const noexcept { return f_; }
  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t residue_size() const noexcept { return q_; }

  Element zero() const { return Element{}; }
  Element one() const;
  Element from_int(std::int64_t n) const;
  Element from_integer(const Integer& n) const;
  // Reduction of an integral element; requires `required_digits` certified pi-digits.
  Element from_element(const LocalFieldElement& x, int required_digits) const;
  LocalFieldElement to_element(const Element& x) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(const Element& a, unsigned n) const;
  Element mul_pi(const Element& a) const;
  // y with a = pi*y; the top e digits of y are not determined by a.
  Element div_pi(const Element& a) const;
  // Inverse of a unit.
  Element inverse(const Element& a) const;

  // pi-adic valuation, precision() when a vanishes in the ring.
  int valuation(const Element& a) const;
  bool vanishes_mod(const Element& a, int k) const { return valuation(a) >= k; }
  Element truncate(const Element& a, int k) const;

  // The residue representative sum r_j omega^j with r = base-p digits of index.
  Element digit(std::uint64_t index) const;
  std::uint64_t residue_index(const Element& a) const;
  const Element& pi_power(int t) const;

 private:
  void reduce_t(const std::uint64_t* in, int len, std::uint64_t* out) const;
  void tmul_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;
  std::uint64_t addm(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  std::uint64_t mulm(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % mod_);
  }

  LocalField field_;
  int e_ = 1;
  int f_ = 1;
  int m_ = 1;
  std::uint64_t p_ = 2;
  std::uint64_t q_ = 2;
  std::uint64_t mod_ = 2;
  std::array<std::uint64_t, kMaxDegree> g_neg_{};
  std::array<std::array<std::uint64_t, kMaxDegree>, kMaxDegree> e_neg_{};
  std::array<Element, 4 * kMaxDegree * 16> pi_powers_{};
  Element w_inv_{};
  int pi_powers_count_ = 0;
};

}  // namespace obstructor
