#include "obstructor/local_field.hpp"

#include <sstream>
#include <stdexcept>

#include "obstructor/errors.hpp"
#include "obstructor/residue_ring.hpp"

namespace obstructor {

struct LocalField::Impl {
  Prime p{2};
  int e = 1;
  int f = 1;
  int precision = kDefaultPrecision;
  bool pi_is_p = false;
  FieldDescriptor descriptor;
  ResidueField residue{2, {1, 1}};
  std::vector<PadicNumber> g_neg;
  std::vector<std::vector<PadicNumber>> e_neg;
  std::vector<PadicNumber> pi_inverse;
};

namespace {

using Coeffs = std::vector<PadicNumber>;

void add_into(PadicNumber& acc, const PadicNumber& v) {
  if (v.is_exact_zero()) return;
  acc = acc + v;
}

// out += a * b for T-elements stored as f coordinates.
void tmul_add(const LocalField::Impl& k, const PadicNumber* a, const PadicNumber* b, PadicNumber* out);

}  // namespace

namespace {

// Appends c*mono in the usual sign convention; `c` is an integer or a parenthesized sum.
void append_term(std::ostringstream& out, bool& first, std::string c, const std::string& mono) {
  bool negative = !c.empty() && c[0] == '-';
  if (negative) c.erase(0, 1);
  if (first) {
    if (negative) out << "-";
  } else {
    out << (negative ? " - " : " + ");
  }
  first = false;
  if (mono.empty()) {
    out << c;
  } else {
    if (c != "1") out << c << "*";
    out << mono;
  }
}

std::string power(const char* var, int k) {
  if (k == 0) return "";
  return k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k);
}

}  // namespace

std::string FieldDescriptor::to_string() const {
  std::ostringstream out;
  out << "Q_" << p;
  if (f() > 1) {
    out << "[w]/(";
    bool first = true;
    for (int j = f(); j >= 0; --j) {
      if (unramified_poly[j] != 0) append_term(out, first, unramified_poly[j].get_str(), power("w", j));
    }
    out << ")";
  }
  const bool trivial_e = e() == 1 && eisenstein_poly[0][0] == -p &&
                         std::all_of(eisenstein_poly[0].begin() + 1, eisenstein_poly[0].end(),
                                     [](const Integer& c) { return c == 0; });
  if (!trivial_e) {
    out << "(pi), ";
    bool first = true;
    for (int i = e(); i >= 0; --i) {
      std::ostringstream coeff;
      bool cfirst = true;
      int terms = 0;
      for (int j = 0; j < f(); ++j) {
        const Integer& c = eisenstein_poly[i][j];
        if (c == 0) continue;
        append_term(coeff, cfirst, c.get_str(), power("w", j));
        ++terms;
      }
      if (terms == 0) continue;
      append_term(out, first, terms > 1 ? "(" + coeff.str() + ")" : coeff.str(), power("pi", i));
    }
    out << " = 0";
  }
  return out.str();
}

namespace {

void tmul_add(const LocalField::Impl& k, const PadicNumber* a, const PadicNumber* b, PadicNumber* out) {
  const int f = k.f;
  if (f == 1) {
    if (a[0].is_exact_zero() || b[0].is_exact_zero()) return;
    out[0] = out[0] + a[0] * b[0];
    return;
  }
  std::vector<PadicNumber> prod(static_cast<std::size_t>(2 * f - 1), PadicNumber::exact_zero(k.p));
  for (int i = 0; i < f; ++i) {
    if (a[i].is_exact_zero()) continue;
    for (int j = 0; j < f; ++j) {
      if (b[j].is_exact_zero()) continue;
      prod[i + j] = prod[i + j] + a[i] * b[j];
    }
  }
  for (int j = 2 * f - 2; j >= f; --j) {
    if (prod[j].is_exact_zero()) continue;
    const PadicNumber t = prod[j];
    prod[j] = PadicNumber::exact_zero(k.p);
    for (int m = 0; m < f; ++m) add_into(prod[j - f + m], t * k.g_neg[m]);
  }
  for (int j = 0; j < f; ++j) add_into(out[j], prod[j]);
}

}  // namespace

LocalField LocalField::build(const Prime& p, std::vector<Integer> unramified_poly,
                             std::vector<std::vector<Integer>> eisenstein_poly, int precision) {
  if (precision < 4) throw std::invalid_argument("field precision must be at least 4 digits");
  if (unramified_poly.size() < 2 || unramified_poly.back() != 1) {
    throw HypothesisError("unramified polynomial must be monic of positive degree");
  }
  const int f = static_cast<int>(unramified_poly.size()) - 1;
  if (f == 1) unramified_poly = {-1, 1};
  FpPoly gmod;
  for (const auto& c : unramified_poly) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p.ui());
    gmod.push_back(static_cast<std::int64_t>(r.get_ui()));
  }
  if (f > 1 && !is_irreducible_mod_p(gmod, p.value())) {
    throw HypothesisError("unramified polynomial is reducible mod " + std::to_string(p.value()));
  }
  if (eisenstein_poly.empty()) eisenstein_poly = {{-Integer(p.value())}, {1}};
  if (eisenstein_poly.size() < 2) throw HypothesisError("Eisenstein polynomial must have degree >= 1");
  const int e = static_cast<int>(eisenstein_poly.size()) - 1;
  for (auto& c : eisenstein_poly) {
    if (static_cast<int>(c.size()) > f) throw HypothesisError("Eisenstein coefficient has too many coordinates");
    c.resize(static_cast<std::size_t>(f), 0);
  }
  if (eisenstein_poly[e][0] != 1 ||
      std::any_of(eisenstein_poly[e].begin() + 1, eisenstein_poly[e].end(),
                  [](const Integer& c) { return c != 0; })) {
    throw HypothesisError("Eisenstein polynomial must be monic");
  }
  for (int i = 0; i < e; ++i) {
    for (const auto& c : eisenstein_poly[i]) {
      if (!mpz_divisible_ui_p(c.get_mpz_t(), p.ui())) {
        throw HypothesisError("not Eisenstein: coefficient of T^" + std::to_string(i) + " is not divisible by p");
      }
    }
  }
  int v0 = kInfinitePrecision;
  for (const auto& c : eisenstein_poly[0]) {
    if (c != 0) v0 = std::min(v0, valuation(c, p));
  }
  if (v0 != 1) throw HypothesisError("not Eisenstein: constant term must have valuation exactly 1");

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->e = e;
  impl->f = f;
  impl->precision = precision;
  impl->descriptor = FieldDescriptor{p.value(), unramified_poly, eisenstein_poly};
  impl->residue = ResidueField(p.value(), f == 1 ? FpPoly{0, 1} : gmod);
  auto padic = [&](const Integer& c) {
    return c == 0 ? PadicNumber::exact_zero(p) : PadicNumber::from_integer(c, p, precision);
  };
  for (int j = 0; j < f; ++j) impl->g_neg.push_back(padic(-unramified_poly[j]));
  for (int i = 0; i < e; ++i) {
    std::vector<PadicNumber> a;
    for (int j = 0; j < f; ++j) a.push_back(padic(-eisenstein_poly[i][j]));
    impl->e_neg.push_back(std::move(a));
  }
  impl->pi_is_p = e == 1 && eisenstein_poly[0][0] == -Integer(p.value()) &&
                  std::all_of(eisenstein_poly[0].begin() + 1, eisenstein_poly[0].end(),
                              [](const Integer& c) { return c == 0; });

  const PadicNumber inv_p = PadicNumber::from_rational(1, p.value(), p, precision);
  if (impl->pi_is_p) {
    impl->pi_inverse.assign(static_cast<std::size_t>(f), PadicNumber::exact_zero(p));
    impl->pi_inverse[0] = inv_p;
  } else {
    LocalField tmp(std::static_pointer_cast<const Impl>(impl));
    // E(pi) = 0 gives pi * Q(pi) = -a_0 with Q = sum_{i>=1} a_i pi^(i-1).
    LocalFieldElement q = tmp.zero();
    LocalFieldElement pi_power = tmp.one();
    for (int i = 1; i <= e; ++i) {
      std::vector<PadicNumber> a(static_cast<std::size_t>(e * f), PadicNumber::exact_zero(p));
      for (int j = 0; j < f; ++j) a[j] = padic(eisenstein_poly[i][j]);
      q = q + tmp.element(std::move(a)) * pi_power;
      if (i < e) pi_power = pi_power.mul_by_pi();
    }
    std::vector<PadicNumber> u0(static_cast<std::size_t>(e * f), PadicNumber::exact_zero(p));
    for (int j = 0; j < f; ++j) u0[j] = padic(eisenstein_poly[0][j]) * inv_p;
    const LocalFieldElement a0_inv = tmp.element(std::move(u0)).unit_inverse().scaled(inv_p);
    impl->pi_inverse = (-(q * a0_inv)).coefficients();
  }
  return LocalField(std::move(impl));
}

LocalField LocalField::build(const FieldDescriptor& d, int precision) {
  return build(Prime(d.p), d.unramified_poly, d.eisenstein_poly, precision);
}

LocalField LocalField::qp(const Prime& p, int precision) {
  return build(p, {-1, 1}, {{-Integer(p.value())}, {1}}, precision);
}

LocalField LocalField::unramified(const Prime& p, int f, int precision) {
  const FpPoly g = canonical_unramified_polynomial(p.value(), f);
  std::vector<Integer> poly;
  for (auto c : g) poly.emplace_back(static_cast<long>(c));
  return build(p, poly, {{-Integer(p.value())}, {1}}, precision);
}

LocalField LocalField::totally_ramified(const Prime& p, const std::vector<Integer>& eisenstein_poly,
                                        int precision) {
  std::vector<std::vector<Integer>> e;
  for (const auto& c : eisenstein_poly) e.push_back({c});
  return build(p, {-1, 1}, std::move(e), precision);
}

const Prime& LocalField::prime() const { return impl_->p; }
int LocalField::e() const { return impl_->e; }
int LocalField::f() const { return impl_->f; }
int LocalField::precision() const { return impl_->precision; }
const ResidueField& LocalField::residue_field() const { return impl_->residue; }
const FieldDescriptor& LocalField::descriptor() const { return impl_->descriptor; }
std::string LocalField::name() const { return impl_->descriptor.to_string(); }

bool LocalField::same_as(const LocalField& other) const {
  return impl_ == other.impl_ ||
         (impl_->descriptor == other.impl_->descriptor && impl_->precision == other.impl_->precision);
}

LocalFieldElement LocalField::zero() const {
  return LocalFieldElement(*this, Coeffs(static_cast<std::size_t>(degree()), PadicNumber::exact_zero(prime())));
}

LocalFieldElement LocalField::one() const { return from_integer(1); }

LocalFieldElement LocalField::uniformizer() const {
  Coeffs c(static_cast<std::size_t>(degree()), PadicNumber::exact_zero(prime()));
  if (e() == 1) {
    for (int j = 0; j < f(); ++j) c[j] = impl_->e_neg[0][j];
  } else {
    c[static_cast<std::size_t>(f())] = PadicNumber::from_integer(1, prime(), precision());
  }
  return LocalFieldElement(*this, std::move(c));
}

LocalFieldElement LocalField::omega() const {
  Coeffs c(static_cast<std::size_t>(degree()), PadicNumber::exact_zero(prime()));
  if (f() == 1) {
    c[0] = PadicNumber::from_integer(-impl_->descriptor.unramified_poly[0], prime(), precision());
  } else {
    c[1] = PadicNumber::from_integer(1, prime(), precision());
  }
  return LocalFieldElement(*this, std::move(c));
}

LocalFieldElement LocalField::from_integer(const Integer& n) const {
  return embed(PadicNumber::from_integer(n, prime(), precision()));
}

LocalFieldElement LocalField::from_rational(const Rational& r) const {
  return embed(PadicNumber::from_rational(r, prime(), precision()));
}

LocalFieldElement LocalField::embed(const PadicNumber& x) const {
  if (x.prime() != prime()) throw std::invalid_argument("embedding a p-adic number over another prime");
  Coeffs c(static_cast<std::size_t>(degree()), PadicNumber::exact_zero(prime()));
  c[0] = x;
  return LocalFieldElement(*this, std::move(c));
}

LocalFieldElement LocalField::element(std::vector<PadicNumber> coeffs) const {
  if (static_cast<int>(coeffs.size()) != degree()) {
    throw std::invalid_argument("element needs " + std::to_string(degree()) + " coordinates");
  }
  for (const auto& c : coeffs) {
    if (c.prime() != prime()) throw std::invalid_argument("coordinate over another prime");
  }
  return LocalFieldElement(*this, std::move(coeffs));
}

LocalFieldElement LocalField::lift_residue(const ResidueField::Element& r) const {
  Coeffs c(static_cast<std::size_t>(degree()), PadicNumber::exact_zero(prime()));
  for (int j = 0; j < f(); ++j) {
    if (r[j] != 0) c[j] = PadicNumber::from_integer(static_cast<long>(r[j]), prime(), precision());
  }
  return LocalFieldElement(*this, std::move(c));
}

namespace {

void check_same(const LocalFieldElement& x, const LocalFieldElement& y) {
  if (!x.field().same_as(y.field())) throw std::invalid_argument("elements of different fields");
}

}  // namespace

const PadicNumber& LocalFieldElement::coefficient(int i, int j) const {
  return coeffs_.at(static_cast<std::size_t>(i * field_.f() + j));
}

bool LocalFieldElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<int> LocalFieldElement::certified_valuation() const {
  const int e = field_.e();
  const int f = field_.f();
  int best = kInfinitePrecision;
  int zero_bound = kInfinitePrecision;
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < f; ++j) {
      const PadicNumber& c = coeffs_[static_cast<std::size_t>(i * f + j)];
      if (c.is_zero()) {
        if (!c.is_exact_zero()) zero_bound = std::min(zero_bound, e * c.absolute_precision() + i);
      } else {
        best = std::min(best, e * c.valuation() + i);
      }
    }
  }
  if (best == kInfinitePrecision || best >= zero_bound) return std::nullopt;
  return best;
}

int LocalFieldElement::valuation() const {
  auto v = certified_valuation();
  if (!v) throw PrecisionError("valuation of an element that is zero at precision");
  return *v;
}

int LocalFieldElement::absolute_precision() const {
  const int e = field_.e();
  const int f = field_.f();
  int best = kInfinitePrecision;
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < f; ++j) {
      const PadicNumber& c = coeffs_[static_cast<std::size_t>(i * f + j)];
      if (c.is_exact_zero()) continue;
      best = std::min(best, e * c.absolute_precision() + i);
    }
  }
  return best;
}

bool LocalFieldElement::is_integral() const {
  for (const auto& c : coeffs_) {
    if (!c.is_integral()) return false;
  }
  return true;
}

LocalFieldElement LocalFieldElement::operator-() const {
  Coeffs c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(-x);
  return LocalFieldElement(field_, std::move(c));
}

LocalFieldElement operator+(const LocalFieldElement& x, const LocalFieldElement& y) {
  check_same(x, y);
  Coeffs c;
  c.reserve(x.coeffs_.size());
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) c.push_back(x.coeffs_[k] + y.coeffs_[k]);
  return LocalFieldElement(x.field_, std::move(c));
}

LocalFieldElement operator-(const LocalFieldElement& x, const LocalFieldElement& y) { return x + (-y); }

LocalFieldElement operator*(const LocalFieldElement& x, const LocalFieldElement& y) {
  check_same(x, y);
  const auto& k = x.field_.impl();
  const int e = k.e;
  const int f = k.f;
  if (e == 1 && f == 1) {
    return LocalFieldElement(x.field_, Coeffs{x.coeffs_[0] * y.coeffs_[0]});
  }
  const PadicNumber zero = PadicNumber::exact_zero(k.p);
  // prod[i] holds the T-coefficient of pi^i.
  std::vector<Coeffs> prod(static_cast<std::size_t>(2 * e - 1), Coeffs(static_cast<std::size_t>(f), zero));
  for (int i1 = 0; i1 < e; ++i1) {
    for (int i2 = 0; i2 < e; ++i2) {
      tmul_add(k, &x.coeffs_[static_cast<std::size_t>(i1 * f)], &y.coeffs_[static_cast<std::size_t>(i2 * f)],
               prod[i1 + i2].data());
    }
  }
  for (int i = 2 * e - 2; i >= e; --i) {
    const Coeffs t = prod[i];
    for (int m = 0; m < e; ++m) tmul_add(k, t.data(), k.e_neg[m].data(), prod[i - e + m].data());
  }
  Coeffs c;
  c.reserve(static_cast<std::size_t>(e * f));
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < f; ++j) c.push_back(prod[i][j]);
  }
  return LocalFieldElement(x.field_, std::move(c));
}

LocalFieldElement LocalFieldElement::scaled(const PadicNumber& s) const {
  Coeffs c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(x * s);
  return LocalFieldElement(field_, std::move(c));
}

LocalFieldElement LocalFieldElement::mul_by_pi() const {
  const auto& k = field_.impl();
  const int e = k.e;
  const int f = k.f;
  if (e == 1) {
    Coeffs pi(static_cast<std::size_t>(f), PadicNumber::exact_zero(k.p));
    for (int j = 0; j < f; ++j) pi[j] = k.e_neg[0][j];
    return *this * LocalFieldElement(field_, std::move(pi));
  }
  Coeffs c(static_cast<std::size_t>(e * f), PadicNumber::exact_zero(k.p));
  for (int i = e - 1; i >= 1; --i) {
    for (int j = 0; j < f; ++j) c[i * f + j] = coeffs_[(i - 1) * f + j];
  }
  const PadicNumber* top = &coeffs_[static_cast<std::size_t>((e - 1) * f)];
  for (int m = 0; m < e; ++m) tmul_add(k, top, k.e_neg[m].data(), &c[static_cast<std::size_t>(m * f)]);
  return LocalFieldElement(field_, std::move(c));
}

LocalFieldElement LocalFieldElement::shifted(int k) const {
  const auto& impl = field_.impl();
  if (impl.pi_is_p) {
    Coeffs c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(x.shifted(k));
    return LocalFieldElement(field_, std::move(c));
  }
  LocalFieldElement r = *this;
  if (k >= 0) {
    for (int t = 0; t < k; ++t) r = r.mul_by_pi();
  } else {
    const LocalFieldElement pinv(field_, impl.pi_inverse);
    for (int t = 0; t < -k; ++t) r = r * pinv;
  }
  return r;
}

LocalFieldElement LocalFieldElement::unit_part() const { return shifted(-valuation()); }

LocalFieldElement LocalFieldElement::unit_inverse() const {
  const ResidueField& kres = field_.residue_field();
  const ResidueField::Element r = residue();
  if (kres.is_zero(r)) throw DomainError("unit inverse of a non-unit");
  LocalFieldElement y = field_.lift_residue(kres.inverse(r));
  const LocalFieldElement one = field_.one();
  for (int iter = 0; iter < 64; ++iter) {
    const LocalFieldElement err = one - *this * y;
    if (err.is_zero()) return y;
    y = y + y * err;
  }
  throw PrecisionError("unit inversion did not converge");
}

LocalFieldElement LocalFieldElement::inverse() const {
  if (is_zero()) throw DomainError("inversion of an element that is zero at precision");
  const int v = valuation();
  return shifted(-v).unit_inverse().shifted(-v);
}

LocalFieldElement operator/(const LocalFieldElement& x, const LocalFieldElement& y) {
  check_same(x, y);
  return x * y.inverse();
}

LocalFieldElement LocalFieldElement::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  LocalFieldElement acc = field_.one();
  LocalFieldElement base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

LocalFieldElement LocalFieldElement::truncated(int k) const {
  const int e = field_.e();
  const int f = field_.f();
  Coeffs c = coeffs_;
  for (int i = 0; i < e; ++i) {
    // pi^i p^m has valuation e*m + i; keep p-digits m with e*m + i < k.
    const int keep = k - i <= 0 ? 0 : (k - i + e - 1) / e;
    for (int j = 0; j < f; ++j) {
      auto& x = c[static_cast<std::size_t>(i * f + j)];
      x = x.truncated(keep);
    }
  }
  return LocalFieldElement(field_, std::move(c));
}

ResidueField::Element LocalFieldElement::residue() const {
  if (!is_integral()) throw std::invalid_argument("residue of a non-integral element");
  const int f = field_.f();
  ResidueField::Element r(static_cast<std::size_t>(f));
  for (int j = 0; j < f; ++j) {
    r[j] = static_cast<std::int64_t>(coeffs_[static_cast<std::size_t>(j)].residue(1).get_si());
  }
  return r;
}

std::string LocalFieldElement::to_string() const {
  const int e = field_.e();
  const int f = field_.f();
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < f; ++j) {
      const PadicNumber& c = coeffs_[static_cast<std::size_t>(i * f + j)];
      if (c.is_zero()) continue;
      Rational a = c.approximation();
      std::string s = a.get_str();
      const bool negative = a < 0;
      if (negative) s = s.substr(1);
      if (first) {
        out << (negative ? "-" : "");
      } else {
        out << (negative ? " - " : " + ");
      }
      first = false;
      std::string mono;
      if (i > 0) mono += "pi" + (i > 1 ? "^" + std::to_string(i) : std::string());
      if (j > 0) mono += (mono.empty() ? "" : "*") + std::string("w") + (j > 1 ? "^" + std::to_string(j) : "");
      if (mono.empty()) {
        out << s;
      } else if (s == "1") {
        out << mono;
      } else {
        out << s << "*" << mono;
      }
    }
  }
  if (first) out << "0";
  const int prec = absolute_precision();
  if (prec < kInfinitePrecision) out << " + O(pi^" << prec << ")";
  return out.str();
}

bool operator==(const LocalFieldElement& x, const LocalFieldElement& y) {
  return x.field_.same_as(y.field_) && x.coeffs_ == y.coeffs_;
}

LocalFieldElement evaluate(const LocalPolynomial& poly, const LocalFieldElement& x) {
  if (poly.empty()) return x.field().zero();
  LocalFieldElement acc = poly.back();
  for (std::size_t i = poly.size() - 1; i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

LocalPolynomial derivative(const LocalPolynomial& poly) {
  LocalPolynomial d;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    d.push_back(poly[i] * poly[i].field().from_integer(static_cast<long>(i)));
  }
  return d;
}

LocalFieldElement hensel_lift(const LocalPolynomial& poly, const LocalFieldElement& a) {
  if (poly.size() < 2) throw std::invalid_argument("Hensel lifting needs a polynomial of degree >= 1");
  const LocalPolynomial dpoly = derivative(poly);
  const LocalFieldElement fa = evaluate(poly, a);
  if (fa.is_zero()) return a;
  const auto vd = evaluate(dpoly, a).certified_valuation();
  if (!vd) throw CriterionError("derivative vanishes at precision");
  const auto vf = fa.certified_valuation();
  if (!vf) throw PrecisionError("value at the approximation is not certified");
  if (*vf <= 2 * *vd) {
    throw CriterionError("Hensel criterion fails: val f(a) = " + std::to_string(*vf) +
                         ", val f'(a) = " + std::to_string(*vd));
  }
  LocalFieldElement r = a;
  for (int iter = 0; iter < 128; ++iter) {
    const LocalFieldElement fr = evaluate(poly, r);
    if (fr.is_zero()) return r;
    const LocalFieldElement delta = fr / evaluate(dpoly, r);
    if (delta.is_zero()) return r;
    r = r - delta;
  }
  throw PrecisionError("precision exhausted during Newton iteration");
}

namespace {

int val_two(const LocalField& field) { return field.prime().value() == 2 ? field.e() : 0; }

// Searches t mod pi^j with t^2 = u mod pi^k; returns a representative when found.
std::optional<LocalFieldElement> square_root_mod(const LocalFieldElement& u, int k) {
  const LocalField& field = u.field();
  if (field.prime().value() != 2) {
    const ResidueField& kres = field.residue_field();
    const ResidueField::Element r = u.residue();
    if (!kres.is_square(r)) return std::nullopt;
    if (kres.size() > (1ULL << 24)) throw std::invalid_argument("residue field too large for root search");
    for (std::uint64_t idx = 0; idx < kres.size(); ++idx) {
      const auto t = kres.element_at(idx);
      if (kres.mul(t, t) == r) return field.lift_residue(t);
    }
    return std::nullopt;
  }
  const int j = std::max(k - val_two(field), (k + 1) / 2);
  ResidueRing ring(field, k);
  const ResidueRing::Element ur = ring.from_element(u, k);
  const std::uint64_t q = ring.residue_size();
  double combos = 1;
  for (int s = 0; s < j; ++s) combos *= static_cast<double>(q);
  if (combos > static_cast<double>(1 << 22)) throw std::invalid_argument("square search space too large");
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(j), 0);
  while (true) {
    ResidueRing::Element t = ring.zero();
    for (int s = j - 1; s >= 0; --s) t = ring.add(ring.mul_pi(t), ring.digit(digits[s]));
    if (ring.vanishes_mod(ring.sub(ring.mul(t, t), ur), k)) return ring.to_element(t);
    int s = 0;
    while (s < j && ++digits[s] == q) digits[s++] = 0;
    if (s == j) break;
  }
  return std::nullopt;
}

}  // namespace

bool is_square_mod(const LocalFieldElement& u, int k) {
  if (u.valuation() != 0) throw std::invalid_argument("is_square_mod expects a unit");
  return square_root_mod(u, k).has_value();
}

std::optional<LocalFieldElement> square_root(const LocalFieldElement& x) {
  if (x.is_zero()) throw PrecisionError("square test of an element that is zero at precision");
  const int v = x.valuation();
  if (v % 2 != 0) return std::nullopt;
  const LocalFieldElement u = x.shifted(-v);
  const int needed = 2 * val_two(x.field()) + 1;
  if (u.absolute_precision() < needed) {
    throw PrecisionError("square test needs " + std::to_string(needed) + " certified digits of the unit part");
  }
  const auto t = square_root_mod(u, needed);
  if (!t) return std::nullopt;
  const LocalField& field = x.field();
  const LocalFieldElement r = hensel_lift({-u, field.zero(), field.one()}, *t);
  return r.shifted(v / 2);
}

bool is_square(const LocalFieldElement& x) { return square_root(x).has_value(); }

bool generates_unramified_quadratic(const LocalField& field, const Rational& a) {
  if (a == 0) throw std::invalid_argument("a must be nonzero");
  const LocalFieldElement as = field.from_rational(a);
  if (is_square(as)) return false;
  const int v = as.valuation();
  if (v % 2 != 0) return false;
  if (field.prime().value() != 2) return true;
  return is_square_mod(as.shifted(-v), 2 * field.e());
}

bool is_norm_unramified_quadratic(const LocalFieldElement& x, const Rational& a) {
  const LocalField& field = x.field();
  const LocalFieldElement as = field.from_rational(a);
  if (is_square(as)) throw HypothesisError("a is a square in S");
  if (!generates_unramified_quadratic(field, a)) {
    throw HypothesisError("S(sqrt a)/S is ramified");
  }
  return x.valuation() % 2 == 0;
}

}  // namespace obstructor
