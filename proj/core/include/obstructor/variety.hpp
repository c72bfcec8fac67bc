#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obstructor/hilbert.hpp"
#include "obstructor/local_field.hpp"
#include "obstructor/polynomial.hpp"

namespace obstructor {

enum class Ambient { Projective, Affine };

struct VarietyModel {
  std::string name;
  Ambient ambient = Ambient::Projective;
  std::vector<std::string> variables;
  // Projective weights; all 1 for ordinary projective space, ignored for affine models.
  std::vector<int> weights;
  std::vector<MultiPolynomial> equations;
  // Required nonzero at points of the open subset.
  std::vector<MultiPolynomial> open_conditions;
  std::vector<Place> bad_places;

  static VarietyModel projective(std::vector<std::string> variables, const std::vector<std::string>& equations,
                                 std::vector<int> weights = {});
  static VarietyModel affine(std::vector<std::string> variables, const std::vector<std::string>& equations,
                             const std::vector<std::string>& open_conditions = {});

  std::size_t dimension() const { return variables.size(); }
  bool is_projective() const { return ambient == Ambient::Projective; }
  bool is_weighted() const;
  // Throws SchemaError on inconsistent data, e.g. a non-homogeneous projective equation.
  void validate() const;
};

struct LocalPoint {
  LocalField field;
  std::vector<LocalFieldElement> coords;
  // Coordinate scaled to 1 in the projective case, -1 otherwise.
  int normalization = -1;

  std::string to_string() const;
};

struct RealPoint {
  std::vector<double> coords;
  std::string to_string() const;
};

struct RationalRepresentative {
  MultiPolynomial numerator;
  MultiPolynomial denominator;
};

// A function h given by user-declared equivalent quotients.
struct RationalFunctionClass {
  std::vector<RationalRepresentative> representatives;

  static RationalFunctionClass parse(const std::vector<std::pair<std::string, std::string>>& quotients,
                                     const std::vector<std::string>& variables);
  // Degree-0 check against the model's grading.
  void validate(const VarietyModel& model) const;
};

struct MorphismModel {
  std::string name;
  VarietyModel source;
  VarietyModel target;
  // Image of each target coordinate, in source variables.
  std::vector<MultiPolynomial> coordinate_polys;

  void validate() const;
  LocalPoint apply(const LocalPoint& p) const;
  RealPoint apply(const RealPoint& p) const;
};

struct RationalValue {
  LocalFieldElement value;
  std::size_t representative = 0;
};

// Value of the first representative whose numerator and denominator are nonzero at P.
RationalValue eval_rational(const RationalFunctionClass& h, const LocalPoint& p);
std::optional<double> eval_rational(const RationalFunctionClass& h, const RealPoint& p);

RationalFunctionClass pushforward_compose(const MorphismModel& g, const RationalFunctionClass& h_on_target);

// Largest certified pi-adic residual of the equations at P (kInfinitePrecision when exact).
int residual_valuation(const VarietyModel& model, const LocalPoint& p);
bool satisfies_open_conditions(const VarietyModel& model, const LocalPoint& p);

}  // namespace obstructor
