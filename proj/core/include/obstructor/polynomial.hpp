#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "obstructor/local_field.hpp"
#include "obstructor/padic.hpp"

namespace obstructor {

using Exponents = std::vector<int>;

// Polynomial with integer coefficients in a fixed, named variable list.
class MultiPolynomial {
 public:
  MultiPolynomial() = default;
  explicit MultiPolynomial(std::vector<std::string> variables) : vars_(std::move(variables)) {}

  // Infix grammar: integers, declared names, + - * ^ and parentheses; "lhs = rhs" means lhs - rhs.
  static MultiPolynomial parse(std::string_view text, const std::vector<std::string>& variables);
  static MultiPolynomial constant(const Integer& c, std::vector<std::string> variables);
  static MultiPolynomial variable(std::size_t index, std::vector<std::string> variables);

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t arity() const noexcept { return vars_.size(); }
  const std::map<Exponents, Integer>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  // Variables that occur.
  std::vector<std::size_t> support() const;
  int degree_in(std::size_t var) const;
  int total_degree() const;
  // Weighted degree of every term; -1 if the polynomial is not weighted homogeneous.
  int weighted_degree(std::span<const int> weights) const;
  bool is_homogeneous(std::span<const int> weights) const { return is_zero() || weighted_degree(weights) >= 0; }

  MultiPolynomial operator-() const;
  friend MultiPolynomial operator+(const MultiPolynomial& a, const MultiPolynomial& b);
  friend MultiPolynomial operator-(const MultiPolynomial& a, const MultiPolynomial& b);
  friend MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b);
  MultiPolynomial pow(int n) const;
  MultiPolynomial derivative(std::size_t var) const;
  // Replace variable i by images[i]; the result lives in the images' variables.
  MultiPolynomial substitute(std::span<const MultiPolynomial> images) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;
  LocalFieldElement evaluate(std::span<const LocalFieldElement> point) const;

  std::string to_string() const;
  friend bool operator==(const MultiPolynomial&, const MultiPolynomial&) = default;

 private:
  void add_term(const Exponents& e, const Integer& c);
  std::vector<std::string> vars_;
  std::map<Exponents, Integer> terms_;
};

}  // namespace obstructor
