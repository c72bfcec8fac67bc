#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "obstructor/variety.hpp"

namespace obstructor {

struct RealScanResult {
  std::optional<RealPoint> witness;
  std::size_t attempts = 0;
};

// Heuristic search for a real point: seeded starts refined by minimum-norm Gauss-Newton,
// accepted at residual < 1e-9. A miss is not a certificate.
RealScanResult real_scan(const VarietyModel& model, std::size_t attempts, std::uint64_t seed);

// Up to n distinct real points from at most max_attempts starts (0 means 20 n).
std::vector<RealPoint> sample_real_points(const VarietyModel& model, std::size_t n, std::uint64_t seed,
                                          std::size_t max_attempts = 0);

// Max |F_i| at the point.
double real_residual(const VarietyModel& model, const RealPoint& p);

}  // namespace obstructor
