#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstructor/residue_ring.hpp"
#include "obstructor/variety.hpp"

namespace obstructor {

struct SearchCaps {
  // Residue depth in pi-digits.
  int depth = 8;
  // Residue vectors visited per search.
  std::uint64_t budget = 10'000'000;
  // Defaults, with OBSTRUCTOR_BUDGET overriding the budget.
  static SearchCaps defaults();
};

// A residue vector mod pi^depth; `chart` names the normalized coordinate (-1 for the
// weighted remainder chart or affine models).
struct ResidueVector {
  int chart = -1;
  std::vector<ResidueRing::Element> coords;
};

struct ResidueSolutions {
  int depth = 0;
  std::vector<ResidueVector> vectors;
  std::uint64_t visited = 0;
};

// Every solution mod pi^k in the normalization charts. Throws BudgetExceeded.
ResidueSolutions residue_solutions(const VarietyModel& model, const LocalField& field, int k,
                                   const SearchCaps& caps = SearchCaps::defaults());

// Newton lifting from an approximate point, after certifying val(F) > 2 val(minor)
// for some maximal minor of the Jacobian. Throws HypothesisError when no minor works.
LocalPoint lift_point(const VarietyModel& model, const LocalField& field,
                      const std::vector<LocalFieldElement>& approx, int normalization = -1);

enum class Solvability { Yes, No, Inconclusive };
std::string_view to_string(Solvability s);

struct LocalSolvability {
  Solvability outcome = Solvability::Inconclusive;
  std::optional<LocalPoint> witness;
  // Depth of the Hensel witness, of the empty residue level, or of the cap.
  int depth = 0;
  std::uint64_t visited = 0;
  std::string reason;
};

// No is only certified for projective models without open conditions; an affine search
// covers integral points only.
LocalSolvability has_local_point(const VarietyModel& model, const LocalField& field,
                                 const SearchCaps& caps = SearchCaps::defaults());

struct SampleResult {
  std::vector<LocalPoint> points;
  bool shortfall = false;
  std::uint64_t visited = 0;
};

// Seeded sample of lifted points from distinct Hensel residue classes, with random
// digits below the Hensel radius to separate points drawn from the same class.
SampleResult sample_points(const VarietyModel& model, const LocalField& field, std::size_t n, std::uint64_t seed,
                           const SearchCaps& caps = SearchCaps::defaults());

// Fill in the missing coordinates of a point whose known coordinates are exact.
LocalPoint complete_point(const VarietyModel& model, const LocalField& field,
                          const std::vector<std::optional<LocalFieldElement>>& partial, int depth = 0,
                          std::uint64_t budget = 10'000'000);

}  // namespace obstructor
