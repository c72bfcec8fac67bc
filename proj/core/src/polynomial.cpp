#include "obstructor/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  MultiPolynomial parse() {
    MultiPolynomial lhs = expr();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '=') {
      ++pos_;
      MultiPolynomial rhs = expr();
      lhs = lhs - rhs;
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return lhs;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError("polynomial '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPolynomial expr() {
    MultiPolynomial acc = term();
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  MultiPolynomial term() {
    MultiPolynomial acc = unary();
    while (true) {
      skip();
      if (eat('*')) {
        acc = acc * unary();
        continue;
      }
      // Juxtaposition such as 2x or 3(x+y).
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_')) {
        acc = acc * unary();
        continue;
      }
      return acc;
    }
  }

  MultiPolynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MultiPolynomial power() {
    MultiPolynomial base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      const int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (n > 64) fail("exponent too large");
      return base.pow(n);
    }
    return base;
  }

  MultiPolynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPolynomial inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPolynomial::constant(Integer(std::string(s_.substr(start, pos_ - start))), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return MultiPolynomial::variable(i, vars_);
      }
      pos_ = start;
      fail("undeclared variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

void check_same_vars(const MultiPolynomial& a, const MultiPolynomial& b) {
  if (a.variables() != b.variables()) throw std::invalid_argument("polynomials over different variables");
}

}  // namespace

MultiPolynomial MultiPolynomial::parse(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

MultiPolynomial MultiPolynomial::constant(const Integer& c, std::vector<std::string> variables) {
  MultiPolynomial r(std::move(variables));
  r.add_term(Exponents(r.arity(), 0), c);
  return r;
}

MultiPolynomial MultiPolynomial::variable(std::size_t index, std::vector<std::string> variables) {
  MultiPolynomial r(std::move(variables));
  if (index >= r.arity()) throw std::out_of_range("variable index");
  Exponents e(r.arity(), 0);
  e[index] = 1;
  r.add_term(e, 1);
  return r;
}

void MultiPolynomial::add_term(const Exponents& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPolynomial::is_constant() const {
  for (const auto& [e, c] : terms_) {
    for (int k : e) {
      if (k != 0) return false;
    }
  }
  return true;
}

std::vector<std::size_t> MultiPolynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arity(); ++i) {
    if (degree_in(i) > 0) out.push_back(i);
  }
  return out;
}

int MultiPolynomial::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPolynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

int MultiPolynomial::weighted_degree(std::span<const int> weights) const {
  if (weights.size() != arity()) throw std::invalid_argument("weight vector length");
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * weights[i];
    if (deg >= 0 && s != deg) return -1;
    deg = s;
  }
  return deg < 0 ? 0 : deg;
}

MultiPolynomial MultiPolynomial::operator-() const {
  MultiPolynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPolynomial operator+(const MultiPolynomial& a, const MultiPolynomial& b) {
  check_same_vars(a, b);
  MultiPolynomial r(a);
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPolynomial operator-(const MultiPolynomial& a, const MultiPolynomial& b) { return a + (-b); }

MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b) {
  check_same_vars(a, b);
  MultiPolynomial r(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPolynomial MultiPolynomial::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  MultiPolynomial r = constant(1, vars_);
  MultiPolynomial base(*this);
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

MultiPolynomial MultiPolynomial::derivative(std::size_t var) const {
  MultiPolynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d(e);
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

MultiPolynomial MultiPolynomial::substitute(std::span<const MultiPolynomial> images) const {
  if (images.size() != arity()) throw std::invalid_argument("substitution needs one image per variable");
  if (images.empty()) throw std::invalid_argument("substitution into a constant needs a target variable list");
  const auto& target = images[0].variables();
  for (const auto& im : images) {
    if (im.variables() != target) throw std::invalid_argument("substitution images over different variables");
  }
  MultiPolynomial r(target);
  std::vector<std::vector<MultiPolynomial>> powers(arity());
  for (const auto& [e, c] : terms_) {
    MultiPolynomial t = constant(c, target);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(1, target));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[static_cast<std::size_t>(e[i])];
    }
    r = r + t;
  }
  return r;
}

namespace {

template <class T, class Mul, class FromInt>
T evaluate_generic(const std::map<Exponents, Integer>& terms, std::span<const T> point, T zero, T one,
                   Mul mul, FromInt from_int) {
  std::vector<std::vector<T>> powers(point.size());
  T acc = zero;
  for (const auto& [e, c] : terms) {
    T t = from_int(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(one);
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(mul(pw.back(), point[i]));
      t = mul(t, pw[static_cast<std::size_t>(e[i])]);
    }
    acc = acc + t;
  }
  return acc;
}

}  // namespace

Rational MultiPolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity()) throw std::invalid_argument("point dimension");
  return evaluate_generic<Rational>(
      terms_, point, Rational(0), Rational(1), [](const Rational& a, const Rational& b) { return Rational(a * b); },
      [](const Integer& c) { return Rational(c); });
}

double MultiPolynomial::evaluate(std::span<const double> point) const {
  if (point.size() != arity()) throw std::invalid_argument("point dimension");
  return evaluate_generic<double>(
      terms_, point, 0.0, 1.0, [](double a, double b) { return a * b; }, [](const Integer& c) { return c.get_d(); });
}

LocalFieldElement MultiPolynomial::evaluate(std::span<const LocalFieldElement> point) const {
  if (point.size() != arity()) throw std::invalid_argument("point dimension");
  if (point.empty()) throw std::invalid_argument("evaluation over a field needs a point");
  const LocalField& field = point[0].field();
  return evaluate_generic<LocalFieldElement>(
      terms_, point, field.zero(), field.one(),
      [](const LocalFieldElement& a, const LocalFieldElement& b) { return a * b; },
      [&](const Integer& c) { return field.from_integer(c); });
}

std::string MultiPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Reverse lexicographic in the exponents, so leading variables come first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (has_var) mono << "*";
      mono << vars_[i];
      if (e[i] > 1) mono << "^" << e[i];
      has_var = true;
    }
    if (!has_var) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << mono.str();
    } else {
      out << mag.get_str() << "*" << mono.str();
    }
  }
  return out.str();
}

}  // namespace obstructor
