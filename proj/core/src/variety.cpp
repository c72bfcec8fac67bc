#include "obstructor/variety.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {
constexpr int kDisplayDigits = 12;
}

VarietyModel VarietyModel::projective(std::vector<std::string> variables, const std::vector<std::string>& equations,
                                      std::vector<int> weights) {
  VarietyModel m;
  m.ambient = Ambient::Projective;
  m.variables = std::move(variables);
  m.weights = weights.empty() ? std::vector<int>(m.variables.size(), 1) : std::move(weights);
  for (const auto& eq : equations) m.equations.push_back(MultiPolynomial::parse(eq, m.variables));
  m.validate();
  return m;
}

VarietyModel VarietyModel::affine(std::vector<std::string> variables, const std::vector<std::string>& equations,
                                  const std::vector<std::string>& open_conditions) {
  VarietyModel m;
  m.ambient = Ambient::Affine;
  m.variables = std::move(variables);
  m.weights.assign(m.variables.size(), 1);
  for (const auto& eq : equations) m.equations.push_back(MultiPolynomial::parse(eq, m.variables));
  for (const auto& c : open_conditions) m.open_conditions.push_back(MultiPolynomial::parse(c, m.variables));
  m.validate();
  return m;
}

bool VarietyModel::is_weighted() const {
  for (int w : weights) {
    if (w != 1) return true;
  }
  return false;
}

void VarietyModel::validate() const {
  if (variables.empty()) throw SchemaError("variety '" + name + "': no variables");
  if (weights.size() != variables.size()) throw SchemaError("variety '" + name + "': weights do not match variables");
  for (int w : weights) {
    if (w < 1) throw SchemaError("variety '" + name + "': weights must be positive");
  }
  for (const auto& eq : equations) {
    if (eq.variables() != variables) throw SchemaError("variety '" + name + "': equation over foreign variables");
    if (is_projective() && !eq.is_homogeneous(weights)) {
      throw SchemaError("variety '" + name + "': equation '" + eq.to_string() + "' is not homogeneous");
    }
  }
  if (is_projective()) {
    bool has_unit_weight = false;
    for (int w : weights) has_unit_weight = has_unit_weight || w == 1;
    if (!has_unit_weight) throw SchemaError("variety '" + name + "': some coordinate must have weight 1");
  }
  for (const auto& c : open_conditions) {
    if (c.variables() != variables) throw SchemaError("variety '" + name + "': open condition over foreign variables");
  }
}

std::string LocalPoint::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out << (normalization >= 0 ? " : " : ", ");
    // Display only; the point itself keeps full precision.
    const auto& c = coords[i];
    out << (c.is_zero() ? c : c.truncated(std::min(c.absolute_precision(), kDisplayDigits))).to_string();
  }
  out << ")";
  return out.str();
}

std::string RealPoint::to_string() const {
  std::ostringstream out;
  out.precision(12);
  out << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out << ", ";
    out << coords[i];
  }
  out << ")";
  return out.str();
}

RationalFunctionClass RationalFunctionClass::parse(const std::vector<std::pair<std::string, std::string>>& quotients,
                                                   const std::vector<std::string>& variables) {
  RationalFunctionClass h;
  for (const auto& [num, den] : quotients) {
    h.representatives.push_back({MultiPolynomial::parse(num, variables), MultiPolynomial::parse(den, variables)});
  }
  if (h.representatives.empty()) throw SchemaError("rational function without representatives");
  return h;
}

void RationalFunctionClass::validate(const VarietyModel& model) const {
  if (representatives.empty()) throw SchemaError("rational function without representatives");
  for (const auto& r : representatives) {
    if (r.numerator.variables() != model.variables || r.denominator.variables() != model.variables) {
      throw SchemaError("representative over foreign variables");
    }
    if (r.denominator.is_zero() || r.numerator.is_zero()) throw SchemaError("representative with zero part");
    if (model.is_projective()) {
      const int dn = r.numerator.weighted_degree(model.weights);
      const int dd = r.denominator.weighted_degree(model.weights);
      if (dn < 0 || dd < 0 || dn != dd) {
        throw SchemaError("representative " + r.numerator.to_string() + " / " + r.denominator.to_string() +
                          " is not of degree 0");
      }
    }
  }
}

void MorphismModel::validate() const {
  if (coordinate_polys.size() != target.dimension()) {
    throw SchemaError("morphism '" + name + "': needs one polynomial per target coordinate");
  }
  for (const auto& c : coordinate_polys) {
    if (c.variables() != source.variables) throw SchemaError("morphism '" + name + "': image over foreign variables");
  }
  if (source.is_projective() && target.is_projective()) {
    // Images must scale like the target weights: deg g_j = s * w_j for a common s.
    int scale = -1;
    for (std::size_t j = 0; j < coordinate_polys.size(); ++j) {
      const int d = coordinate_polys[j].weighted_degree(source.weights);
      if (coordinate_polys[j].is_zero()) continue;
      if (d < 0 || d % target.weights[j] != 0) throw SchemaError("morphism '" + name + "': grading mismatch");
      const int s = d / target.weights[j];
      if (scale >= 0 && s != scale) throw SchemaError("morphism '" + name + "': grading mismatch");
      scale = s;
    }
  }
}

LocalPoint MorphismModel::apply(const LocalPoint& p) const {
  LocalPoint out{p.field, {}, -1};
  for (const auto& c : coordinate_polys) out.coords.push_back(c.evaluate(p.coords));
  return out;
}

RealPoint MorphismModel::apply(const RealPoint& p) const {
  RealPoint out;
  for (const auto& c : coordinate_polys) out.coords.push_back(c.evaluate(std::span<const double>(p.coords)));
  return out;
}

RationalValue eval_rational(const RationalFunctionClass& h, const LocalPoint& p) {
  for (std::size_t i = 0; i < h.representatives.size(); ++i) {
    const auto& r = h.representatives[i];
    const LocalFieldElement den = r.denominator.evaluate(p.coords);
    if (den.is_zero()) continue;
    const LocalFieldElement num = r.numerator.evaluate(p.coords);
    if (num.is_zero()) continue;
    return {num / den, i};
  }
  throw NoUsableRepresentative("every representative vanishes or is undefined at " + p.to_string());
}

std::optional<double> eval_rational(const RationalFunctionClass& h, const RealPoint& p) {
  for (const auto& r : h.representatives) {
    const double den = r.denominator.evaluate(std::span<const double>(p.coords));
    const double num = r.numerator.evaluate(std::span<const double>(p.coords));
    if (std::abs(den) < 1e-9 || std::abs(num) < 1e-9) continue;
    return num / den;
  }
  return std::nullopt;
}

RationalFunctionClass pushforward_compose(const MorphismModel& g, const RationalFunctionClass& h_on_target) {
  g.validate();
  RationalFunctionClass out;
  for (const auto& r : h_on_target.representatives) {
    RationalRepresentative s{r.numerator.substitute(g.coordinate_polys), r.denominator.substitute(g.coordinate_polys)};
    if (g.source.is_projective()) {
      const int dn = s.numerator.weighted_degree(g.source.weights);
      const int dd = s.denominator.weighted_degree(g.source.weights);
      if (dn < 0 || dd < 0 || dn != dd) throw SchemaError("morphism '" + g.name + "': composed function has nonzero degree");
    }
    if (s.denominator.is_zero()) throw SchemaError("morphism '" + g.name + "': composed denominator vanishes identically");
    out.representatives.push_back(std::move(s));
  }
  return out;
}

int residual_valuation(const VarietyModel& model, const LocalPoint& p) {
  int v = kInfinitePrecision;
  for (const auto& eq : model.equations) {
    const LocalFieldElement r = eq.evaluate(p.coords);
    v = std::min(v, r.is_zero() ? r.absolute_precision() : r.valuation());
  }
  return v;
}

bool satisfies_open_conditions(const VarietyModel& model, const LocalPoint& p) {
  for (const auto& c : model.open_conditions) {
    if (c.evaluate(p.coords).is_zero()) return false;
  }
  return true;
}

}  // namespace obstructor
