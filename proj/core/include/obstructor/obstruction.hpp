#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obstructor/brauer.hpp"

namespace obstructor {

struct AdelicProfile {
  std::string class_name;
  std::vector<PlaceProfile> profiles;
  std::vector<Place> declared_bad_places;
  // Places outside the declared bad set are taken to contribute 0.
  bool good_place_assumption = true;
  // Sum of the c_v, present only when every profile is constant and every bad place is covered.
  std::optional<QmodZ> a;
  std::optional<Place> blocking_place;
  std::string blocking_reason;

  friend bool operator==(const AdelicProfile&, const AdelicProfile&) = default;
};

AdelicProfile constancy_report(const std::string& class_name, std::vector<PlaceProfile> profiles,
                               const std::vector<Place>& declared_bad_places);

enum class Outcome { Obstructed, NoObstructionFromClass, NotDerivable };
std::string_view to_string(Outcome o);
Outcome parse_outcome(std::string_view s);

struct Verdict {
  int degree = 1;
  Outcome outcome = Outcome::NotDerivable;
  std::string reason;
  std::optional<Place> witness_place;
  // One line per place: its contribution d * c_v.
  std::vector<std::string> trace;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict verdict_for_degree(const AdelicProfile& profile, int d);

struct PlaceScanSpec {
  Place place = Place::real();
  int degree_bound = 1;
};

struct SolvabilityRow {
  Place place = Place::real();
  std::string outcome;
  int depth = 0;
  std::uint64_t visited = 0;
  std::string witness;
  std::string reason;
  // Declared bad places must be solvable before any scan runs.
  bool required = false;

  friend bool operator==(const SolvabilityRow&, const SolvabilityRow&) = default;
};

struct GoodPlaceCheck {
  Place place = Place::real();
  std::size_t evaluations = 0;
  std::size_t nonzero = 0;

  friend bool operator==(const GoodPlaceCheck&, const GoodPlaceCheck&) = default;
};

struct ClassReport {
  std::string name;
  std::string a;
  std::string origin;
  AdelicProfile profile;
  std::vector<Verdict> verdicts;
  std::vector<GoodPlaceCheck> good_places;
  std::size_t coherence_points = 0;
  std::size_t coherence_mismatches = 0;
  std::vector<std::string> global_point_checks;

  friend bool operator==(const ClassReport&, const ClassReport&) = default;
};

struct ExpectationCheck {
  std::string item;
  std::string expected;
  std::string observed;
  bool ok = false;

  friend bool operator==(const ExpectationCheck&, const ExpectationCheck&) = default;
};

struct ObstructionReport {
  std::string scenario;
  std::string command;
  std::uint64_t seed = 0;
  std::vector<SolvabilityRow> solvability;
  std::vector<ClassReport> classes;
  std::vector<std::string> assumptions;
  std::vector<ExpectationCheck> expectations;
  bool aborted = false;
  std::string abort_reason;
  double timing_seconds = 0;

  friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

struct HypOptions {
  std::vector<PlaceScanSpec> scans;
  // Places for the solvability table; declared bad places are always added.
  std::vector<Place> solvability_places;
  bool run_solvability = true;
  bool run_scans = true;
  bool run_verdicts = true;
  bool run_good_places = true;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  SearchCaps caps = SearchCaps::defaults();
  std::size_t good_place_count = 3;
  std::size_t good_place_samples = 10;
  std::size_t coherence_points = 20;
  std::size_t real_attempts = 2000;
  std::vector<LocalPoint> extra_points;
  std::vector<std::vector<Rational>> global_points;
};

// One row of the solvability table; the real place uses the heuristic real scan.
SolvabilityRow solvability_row(const VarietyModel& X, const Place& v, const SearchCaps& caps, std::uint64_t seed,
                               std::size_t real_attempts = 2000);

// Solvability table, then scans, adelic profiles and verdicts per class.
ObstructionReport hyp_report(const VarietyModel& X, const std::vector<QuaternionClass>& classes,
                             const std::vector<int>& degrees, const HypOptions& options);

}  // namespace obstructor
