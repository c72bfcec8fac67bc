#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obstructor/padic.hpp"
#include "obstructor/residue_field.hpp"

namespace obstructor {

// Serializable description of S = T(pi) with T = Q_p[omega]/(g) unramified and
// pi a root of the Eisenstein polynomial E over O_T.
struct FieldDescriptor {
  std::int64_t p = 2;
  // g: monic, low to high, degree f.
  std::vector<Integer> unramified_poly;
  // E: monic, low to high, degree e; each coefficient is an f-vector in the omega basis.
  std::vector<std::vector<Integer>> eisenstein_poly;

  int f() const { return static_cast<int>(unramified_poly.size()) - 1; }
  int e() const { return static_cast<int>(eisenstein_poly.size()) - 1; }
  std::string to_string() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

class LocalFieldElement;

class LocalField {
 public:
  // Validates that g is irreducible mod p and E is Eisenstein.
  static LocalField build(const Prime& p, std::vector<Integer> unramified_poly,
                          std::vector<std::vector<Integer>> eisenstein_poly,
                          int precision = kDefaultPrecision);
  static LocalField build(const FieldDescriptor& descriptor, int precision = kDefaultPrecision);
  static LocalField qp(const Prime& p, int precision = kDefaultPrecision);
  static LocalField unramified(const Prime& p, int f, int precision = kDefaultPrecision);
  // Eisenstein polynomial with integer coefficients over Q_p, low to high.
  static LocalField totally_ramified(const Prime& p, const std::vector<Integer>& eisenstein_poly,
                                     int precision = kDefaultPrecision);

  const Prime& prime() const;
  int e() const;
  int f() const;
  int degree() const { return e() * f(); }
  int precision() const;
  const ResidueField& residue_field() const;
  const FieldDescriptor& descriptor() const;
  std::string name() const;

  LocalFieldElement zero() const;
  LocalFieldElement one() const;
  LocalFieldElement uniformizer() const;
  LocalFieldElement omega() const;
  LocalFieldElement from_integer(const Integer& n) const;
  LocalFieldElement from_rational(const Rational& r) const;
  LocalFieldElement embed(const PadicNumber& x) const;
  // Coordinates in the basis pi^i omega^j, index i*f + j.
  LocalFieldElement element(std::vector<PadicNumber> coeffs) const;
  // Teichmuller-free lift of a residue: sum r_j omega^j with integer r_j.
  LocalFieldElement lift_residue(const ResidueField::Element& r) const;

  bool same_as(const LocalField& other) const;

  // Opaque implementation, defined in the library.
  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  explicit LocalField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend class LocalFieldElement;
};

class LocalFieldElement {
 public:
  const LocalField& field() const noexcept { return field_; }
  const std::vector<PadicNumber>& coefficients() const noexcept { return coeffs_; }
  const PadicNumber& coefficient(int i, int j) const;

  // True when every coordinate is zero at precision.
  bool is_zero() const;
  // Normalized valuation with val(pi) = 1; throws PrecisionError when not certified.
  int valuation() const;
  std::optional<int> certified_valuation() const;
  // Number of pi-adic digits known (kInfinitePrecision for exact zero).
  int absolute_precision() const;
  bool is_integral() const;

  LocalFieldElement operator-() const;
  friend LocalFieldElement operator+(const LocalFieldElement& x, const LocalFieldElement& y);
  friend LocalFieldElement operator-(const LocalFieldElement& x, const LocalFieldElement& y);
  friend LocalFieldElement operator*(const LocalFieldElement& x, const LocalFieldElement& y);
  friend LocalFieldElement operator/(const LocalFieldElement& x, const LocalFieldElement& y);
  LocalFieldElement scaled(const PadicNumber& c) const;
  LocalFieldElement inverse() const;
  LocalFieldElement pow(int n) const;
  // x * pi^k
  LocalFieldElement shifted(int k) const;
  // x * pi^(-val(x))
  LocalFieldElement unit_part() const;
  // Drop digits at and beyond pi-adic position k.
  LocalFieldElement truncated(int k) const;

  ResidueField::Element residue() const;
  std::string to_string() const;

  friend bool operator==(const LocalFieldElement& x, const LocalFieldElement& y);

 private:
  LocalFieldElement(LocalField field, std::vector<PadicNumber> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {}
  LocalFieldElement mul_by_pi() const;
  LocalFieldElement unit_inverse() const;

  LocalField field_;
  std::vector<PadicNumber> coeffs_;
  friend class LocalField;
};

// Univariate polynomial over S, coefficients low to high.
using LocalPolynomial = std::vector<LocalFieldElement>;

LocalFieldElement evaluate(const LocalPolynomial& poly, const LocalFieldElement& x);
LocalPolynomial derivative(const LocalPolynomial& poly);

// Newton iteration from `a`; requires val(f(a)) > 2 val(f'(a)).
LocalFieldElement hensel_lift(const LocalPolynomial& poly, const LocalFieldElement& a);

bool is_square(const LocalFieldElement& x);
std::optional<LocalFieldElement> square_root(const LocalFieldElement& x);
// True when the unit u is congruent to a square mod pi^k.
bool is_square_mod(const LocalFieldElement& u, int k);

// Norm test from S(sqrt a) for a non-square a generating an unramified extension.
bool is_norm_unramified_quadratic(const LocalFieldElement& x, const Rational& a);
// Whether S(sqrt a)/S is unramified and nontrivial.
bool generates_unramified_quadratic(const LocalField& field, const Rational& a);

}  // namespace obstructor
