#pragma once

// Brute-force reference computations used to cross-check the library.

#include <cstdint>
#include <functional>
#include <vector>

#include "obstructor/local_field.hpp"

namespace oracle {

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Some y with y^2 = u mod m, by trying every residue.
inline bool int_square_mod(std::int64_t u, std::int64_t m) {
  for (std::int64_t y = 0; y < m; ++y) {
    if (mod(y * y - u, m) == 0) return true;
  }
  return false;
}

// u * p^v is a square in Q_p: v even and u a square mod 8 (p = 2) or mod p.
inline bool int_is_square_qp(std::int64_t n, std::int64_t p) {
  if (n == 0) return true;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  if (v % 2) return false;
  return int_square_mod(n, p == 2 ? 8 : p);
}

// Every element sum_{i<k} r_i pi^i of O_S / pi^k with r_i running over residue lifts.
inline void for_each_residue(const obstructor::LocalField& S, int k,
                             const std::function<void(const obstructor::LocalFieldElement&)>& fn) {
  const auto& F = S.residue_field();
  std::vector<obstructor::LocalFieldElement> lifts;
  for (std::uint64_t i = 0; i < F.size(); ++i) lifts.push_back(S.lift_residue(F.element_at(i)));
  std::vector<obstructor::LocalFieldElement> powers{S.one()};
  for (int i = 1; i < k; ++i) powers.push_back(powers.back() * S.uniformizer());
  std::vector<std::size_t> digit(static_cast<std::size_t>(k), 0);
  for (;;) {
    obstructor::LocalFieldElement x = S.zero();
    for (int i = 0; i < k; ++i) x = x + lifts[digit[static_cast<std::size_t>(i)]] * powers[static_cast<std::size_t>(i)];
    fn(x);
    int i = 0;
    while (i < k && ++digit[static_cast<std::size_t>(i)] == lifts.size()) digit[static_cast<std::size_t>(i++)] = 0;
    if (i == k) return;
  }
}

// Square test by exhaustion: even valuation and the unit part a square mod pi^(2e+1).
inline bool is_square_exhaustive(const obstructor::LocalFieldElement& x) {
  if (x.is_zero()) return true;
  const int v = x.valuation();
  if (v % 2) return false;
  const obstructor::LocalField& S = x.field();
  const obstructor::LocalFieldElement u = x.unit_part();
  const int k = S.prime().value() == 2 ? 2 * S.e() + 1 : 1;
  bool found = false;
  for_each_residue(S, k, [&](const obstructor::LocalFieldElement& y) {
    if (found) return;
    const obstructor::LocalFieldElement d = y * y - u;
    if (d.is_zero() || d.valuation() >= k) found = true;
  });
  return found;
}

// Primitive (x, y, z) mod p^k with a x^2 + b y^2 + c z^2 = 0 mod p^k.
inline bool diagonal_conic_has_primitive_solution(std::int64_t a, std::int64_t b, std::int64_t c,
                                                  std::int64_t p, int k) {
  const std::int64_t m = ipow(p, k);
  for (std::int64_t x = 0; x < m; ++x) {
    for (std::int64_t y = 0; y < m; ++y) {
      const std::int64_t s = mod(a * x % m * x + b * y % m * y, m);
      for (std::int64_t z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (mod(s + c * z % m * z, m) == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace oracle
