#include "obstructor/real.hpp"

#include <cmath>
#include <random>

namespace obstructor {

namespace {

constexpr double kResidual = 1e-9;

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Solves (A A^T) y = b for square A A^T by elimination with partial pivoting.
bool solve(std::vector<std::vector<double>> m, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-300) return false;
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= m[i][k] * b[k];
    b[i] /= m[i][i];
  }
  return true;
}

class RealSolver {
 public:
  explicit RealSolver(const VarietyModel& model) : model_(model) {
    for (const auto& eq : model.equations) {
      std::vector<MultiPolynomial> row;
      for (std::size_t v = 0; v < model.dimension(); ++v) row.push_back(eq.derivative(v));
      jac_.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < model.dimension(); ++i) {
      if (!model.is_projective() || model.weights[i] == 1) unit_coords_.push_back(static_cast<int>(i));
    }
  }

  std::optional<RealPoint> attempt(std::mt19937_64& rng) const {
    const std::size_t n = model_.dimension();
    std::vector<double> x(n);
    for (auto& c : x) c = 4 * unit_real(rng) - 2;
    int chart = -1;
    if (model_.is_projective()) {
      chart = unit_coords_[static_cast<std::size_t>(rng() % unit_coords_.size())];
      x[static_cast<std::size_t>(chart)] = 1;
    }
    const std::size_t r = model_.equations.size();
    for (int iter = 0; iter < 80 && r > 0; ++iter) {
      std::vector<double> f(r);
      double worst = 0;
      for (std::size_t i = 0; i < r; ++i) {
        f[i] = model_.equations[i].evaluate(std::span<const double>(x));
        worst = std::max(worst, std::abs(f[i]));
      }
      if (worst < 1e-14) break;
      std::vector<std::vector<double>> j(r, std::vector<double>(n, 0));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t v = 0; v < n; ++v) {
          if (static_cast<int>(v) == chart) continue;
          j[i][v] = jac_[i][v].evaluate(std::span<const double>(x));
        }
      }
      // Minimum-norm step: dx = J^T (J J^T)^-1 f, lightly damped.
      std::vector<std::vector<double>> jj(r, std::vector<double>(r, 0));
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
          for (std::size_t v = 0; v < n; ++v) jj[a][b] += j[a][v] * j[b][v];
        }
        jj[a][a] += 1e-14;
      }
      std::vector<double> y = f;
      if (!solve(jj, y)) return std::nullopt;
      for (std::size_t v = 0; v < n; ++v) {
        double dx = 0;
        for (std::size_t a = 0; a < r; ++a) dx += j[a][v] * y[a];
        x[v] -= dx;
      }
      for (double c : x) {
        if (!std::isfinite(c) || std::abs(c) > 1e6) return std::nullopt;
      }
    }
    RealPoint p{x};
    if (real_residual(model_, p) >= kResidual) return std::nullopt;
    for (const auto& g : model_.open_conditions) {
      if (std::abs(g.evaluate(std::span<const double>(x))) < 1e-6) return std::nullopt;
    }
    return p;
  }

 private:
  const VarietyModel& model_;
  std::vector<std::vector<MultiPolynomial>> jac_;
  std::vector<int> unit_coords_;
};

}  // namespace

double real_residual(const VarietyModel& model, const RealPoint& p) {
  double worst = 0;
  for (const auto& eq : model.equations) worst = std::max(worst, std::abs(eq.evaluate(std::span<const double>(p.coords))));
  return worst;
}

RealScanResult real_scan(const VarietyModel& model, std::size_t attempts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RealSolver solver(model);
  RealScanResult out;
  for (out.attempts = 0; out.attempts < attempts;) {
    ++out.attempts;
    if (auto p = solver.attempt(rng)) {
      out.witness = std::move(p);
      break;
    }
  }
  return out;
}

std::vector<RealPoint> sample_real_points(const VarietyModel& model, std::size_t n, std::uint64_t seed,
                                          std::size_t max_attempts) {
  std::mt19937_64 rng(seed);
  RealSolver solver(model);
  std::vector<RealPoint> out;
  const std::size_t cap = max_attempts ? max_attempts : 20 * n;
  for (std::size_t i = 0; i < cap && out.size() < n; ++i) {
    if (auto p = solver.attempt(rng)) out.push_back(std::move(*p));
  }
  return out;
}

}  // namespace obstructor
