#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "obstructor/local_field.hpp"
#include "obstructor/padic.hpp"
#include "obstructor/qmodz.hpp"

namespace obstructor {

// A place of Q: the real place or a prime.
class Place {
 public:
  static Place real() { return Place(); }
  static Place finite(const Prime& p) { return Place(p.value()); }
  // "inf", "real" or a prime.
  static Place parse(std::string_view text);

  bool is_real() const noexcept { return p_ == 0; }
  bool is_finite() const noexcept { return p_ != 0; }
  Prime prime() const;
  std::string to_string() const;

  friend bool operator==(const Place&, const Place&) = default;
  // Finite places by p, the real place last.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    if (a.p_ == b.p_) return std::strong_ordering::equal;
    if (a.p_ == 0) return std::strong_ordering::greater;
    if (b.p_ == 0) return std::strong_ordering::less;
    return a.p_ <=> b.p_;
  }

 private:
  Place() = default;
  explicit Place(std::int64_t p) : p_(p) {}
  std::int64_t p_ = 0;
};

QmodZ hilbert_real(const Rational& a, const Rational& b);
QmodZ hilbert_real(double a, double b);

QmodZ hilbert_qp(const Rational& a, const Rational& b, const Prime& p);
// Needs one unit digit (p odd) or three (p = 2) of each argument.
QmodZ hilbert_qp(const PadicNumber& a, const PadicNumber& b);

QmodZ hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

enum class SymbolPath { Qp, Square, UnramifiedParity, ConicSearch };
std::string_view to_string(SymbolPath path);

struct ConicOptions {
  // Largest residue depth in pi-digits; 0 means 4e + 6.
  int max_depth = 0;
  // Skip the shortcuts and always search the conic.
  bool force_conic = false;
  std::size_t frontier_cap = std::size_t{1} << 22;
};

struct SymbolResult {
  QmodZ value;
  SymbolPath path = SymbolPath::Qp;
  // Residue depth at which the conic search concluded.
  int depth = 0;
  // Projective point (z : u : w) on z^2 = a u^2 + x w^2 when one was lifted.
  std::optional<std::array<LocalFieldElement, 3>> witness;
};

// (a, x) over S = x.field(). Throws InconclusiveError when the conic search hits its cap.
SymbolResult hilbert_ext_detailed(const Rational& a, const LocalFieldElement& x,
                                  const ConicOptions& options = {});
QmodZ hilbert_ext(const Rational& a, const LocalFieldElement& x, const ConicOptions& options = {});

// Primes dividing the numerators and denominators of the arguments, together with 2.
std::vector<Prime> relevant_primes(const Rational& a, const Rational& b);
// Sum of all local symbols vanishes.
bool product_formula_check(const Rational& a, const Rational& b);

}  // namespace obstructor
