#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstructor/hilbert.hpp"
#include "obstructor/search.hpp"
#include "obstructor/variety.hpp"

namespace obstructor {

// A = (a, h), possibly pulled back along a morphism. `h` always lives on the source
// variety; a pulled-back class keeps the target function and the morphism as well.
struct QuaternionClass {
  std::string name;
  Rational a;
  RationalFunctionClass h;
  std::optional<MorphismModel> morphism;
  std::optional<RationalFunctionClass> target_h;
  int order_hint = 2;

  static QuaternionClass direct(std::string name, Rational a, RationalFunctionClass h);
  static QuaternionClass pulled_back(std::string name, Rational a, RationalFunctionClass h_on_target,
                                     MorphismModel g);

  bool is_pulled_back() const { return morphism.has_value(); }
  // "direct" or "pulled_back(<morphism>)".
  std::string origin() const;
};

struct EvaluationRecord {
  Place place = Place::real();
  // Absent at the real place.
  std::optional<FieldDescriptor> field;
  std::string field_name;
  std::string point;
  QmodZ value;
  std::string path;
  std::size_t representative = 0;

  friend bool operator==(const EvaluationRecord&, const EvaluationRecord&) = default;
};

// hilbert_ext(a, h(P)). Throws NoUsableRepresentative and InconclusiveError.
EvaluationRecord evaluate(const QuaternionClass& A, const LocalPoint& p, const ConicOptions& options = {});
// hilbert_real(a, h(P)); nullopt when no representative is usable.
std::optional<EvaluationRecord> evaluate_real(const QuaternionClass& A, const RealPoint& p);

struct FieldObservation {
  std::string field;
  std::optional<FieldDescriptor> descriptor;
  int degree = 1;
  // Distinct values in increasing order, with the first record for each.
  std::vector<QmodZ> values;
  std::vector<EvaluationRecord> exemplars;
  std::size_t evaluations = 0;
  std::size_t explicit_points = 0;
  std::size_t embedded_points = 0;
  std::size_t skipped = 0;
  std::size_t inconclusive = 0;
  bool shortfall = false;
  // Sampling found nothing and the search certified there is nothing to find.
  bool certified_empty = false;

  friend bool operator==(const FieldObservation&, const FieldObservation&) = default;
};

enum class ProfileStatus { Constant, Nonconstant, Incomplete };
std::string_view to_string(ProfileStatus s);
ProfileStatus parse_profile_status(std::string_view s);

struct PlaceProfile {
  Place place = Place::real();
  int degree_bound = 1;
  std::size_t samples = 0;
  std::optional<std::string> base_witness;
  std::vector<FieldObservation> fields;
  std::optional<QmodZ> c_v;
  ProfileStatus status = ProfileStatus::Incomplete;
  std::vector<EvaluationRecord> witness_pair;
  // Base points re-evaluated after embedding into each extension.
  std::size_t restriction_checks = 0;
  std::size_t restriction_failures = 0;
  std::string reason;

  friend bool operator==(const PlaceProfile&, const PlaceProfile&) = default;
};

struct ScanOptions {
  int degree_bound = 1;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  SearchCaps caps = SearchCaps::defaults();
  // Known points, attached to the catalog entry isomorphic to their field.
  std::vector<LocalPoint> extra_points;
  std::size_t restriction_points = 3;
  bool parallel = true;
};

PlaceProfile scan_place(const VarietyModel& X, const QuaternionClass& A, const Place& v, const ScanOptions& options);
PlaceProfile scan_real(const VarietyModel& X, const QuaternionClass& A, std::size_t samples, std::uint64_t seed);

struct CoherenceCheck {
  std::size_t points = 0;
  std::size_t mismatches = 0;
};

// Compares A at P with the target class at g(P) on sampled points of X over `field`.
CoherenceCheck pullback_coherence(const VarietyModel& X, const QuaternionClass& A, const LocalField& field,
                                  std::size_t points, std::uint64_t seed,
                                  const SearchCaps& caps = SearchCaps::defaults());

// Mixes a seed with a stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace obstructor
