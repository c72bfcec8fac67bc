#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obstructor/obstruction.hpp"

namespace obstructor {

// A point given in the scenario; missing coordinates are solved for when the point is realized.
struct ExtraPointSpec {
  Place place = Place::real();
  FieldDescriptor field;
  // Expressions in pi and omega, or nullopt.
  std::vector<std::optional<std::string>> coords;
};

struct ScenarioCaps {
  int depth = 8;
  std::uint64_t budget = 10'000'000;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  std::size_t good_places = 3;
  std::size_t good_place_samples = 10;
};

// Regression block: outcomes only, keyed by place or class name.
struct ExpectedBlock {
  // Place -> "Yes" | "No" | "Inconclusive"; key "*" covers every tested place.
  std::map<std::string, std::string> solvability;
  // Class -> place -> "constant 0" | "constant 1/2" | "nonconstant" | "incomplete".
  std::map<std::string, std::map<std::string, std::string>> profiles;
  // Class -> adelic sum, or "none" when no sum is derivable.
  std::map<std::string, std::string> sums;
  // Class -> degree -> verdict.
  std::map<std::string, std::map<int, std::string>> verdicts;
};

struct Scenario {
  std::string name;
  std::string description;
  VarietyModel variety;
  std::map<std::string, VarietyModel> targets;
  std::vector<MorphismModel> morphisms;
  std::vector<QuaternionClass> classes;
  std::vector<PlaceScanSpec> scans;
  std::vector<Place> solvability_places;
  std::vector<int> degrees;
  ScenarioCaps caps;
  std::vector<ExtraPointSpec> extra_points;
  std::vector<std::vector<Rational>> global_points;
  std::optional<ExpectedBlock> expected;
};

// Throws SchemaError naming the offending field (and line, for malformed JSON).
Scenario parse_scenario(std::string_view text);
// A path, or the name of a bundled scenario.
Scenario load_scenario(const std::string& path_or_name);

std::vector<std::string> catalog_names();
std::optional<std::string_view> catalog_text(std::string_view name);

LocalPoint realize_point(const Scenario& s, const ExtraPointSpec& spec, const SearchCaps& caps);

}  // namespace obstructor
