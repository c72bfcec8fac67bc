#include "obstructor/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>

#include "obstructor/errors.hpp"

namespace obstructor {

SearchCaps SearchCaps::defaults() {
  SearchCaps caps;
  if (const char* env = std::getenv("OBSTRUCTOR_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) caps.budget = v;
  }
  return caps;
}

std::string_view to_string(Solvability s) {
  switch (s) {
    case Solvability::Yes: return "Yes";
    case Solvability::No: return "No";
    case Solvability::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

using Elem = ResidueRing::Element;

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

struct Term {
  Elem coef;
  std::vector<std::pair<int, int>> factors;
};
using Compiled = std::vector<Term>;

Compiled compile(const ResidueRing& ring, const MultiPolynomial& f) {
  Compiled out;
  for (const auto& [e, c] : f.terms()) {
    Term t{ring.from_integer(c), {}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t.factors.emplace_back(static_cast<int>(i), e[i]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

Elem eval(const ResidueRing& ring, const Compiled& f, const std::vector<Elem>& x) {
  Elem acc = ring.zero();
  for (const Term& t : f) {
    Elem v = t.coef;
    for (const auto& [var, k] : t.factors) {
      const Elem& b = x[static_cast<std::size_t>(var)];
      for (int i = 0; i < k; ++i) v = ring.mul(v, b);
    }
    acc = ring.add(acc, v);
  }
  return acc;
}

struct Chart {
  int fixed = -1;
  bool remainder = false;
  std::vector<bool> zero_first_digit;
  std::vector<int> order;
  // Equations whose last free variable is order[i].
  std::vector<std::vector<int>> checks;
};

struct Node {
  int chart = 0;
  int level = 0;
  std::vector<Elem> x;
};

struct HenselData {
  std::vector<int> pivots;
  int vj = 0;
  int vf = 0;
};

// Determinant of a small matrix over the residue ring.
Elem determinant(const ResidueRing& ring, std::vector<std::vector<Elem>> m) {
  const std::size_t n = m.size();
  if (n == 0) return ring.one();
  if (n == 1) return m[0][0];
  if (n == 2) return ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0]));
  Elem acc = ring.zero();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Elem>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Elem> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const Elem term = ring.mul(m[0][c], determinant(ring, std::move(minor)));
    acc = (c % 2 == 0) ? ring.add(acc, term) : ring.sub(acc, term);
  }
  return acc;
}

void combinations(int n, int r, std::vector<std::vector<int>>& out) {
  std::vector<int> c(static_cast<std::size_t>(r));
  std::iota(c.begin(), c.end(), 0);
  if (r > n) return;
  while (true) {
    out.push_back(c);
    int i = r - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Gaussian elimination over S with valuation pivoting.
std::vector<LocalFieldElement> solve_linear(std::vector<std::vector<LocalFieldElement>> a,
                                            std::vector<LocalFieldElement> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    int best_val = 0;
    for (std::size_t r = col; r < n; ++r) {
      const auto v = a[r][col].certified_valuation();
      if (v && (best == n || *v < best_val)) {
        best = r;
        best_val = *v;
      }
    }
    if (best == n) throw PrecisionError("Jacobian minor is singular at working precision");
    std::swap(a[col], a[best]);
    std::swap(b[col], b[best]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const LocalFieldElement factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] = a[r][k] - factor * a[col][k];
      b[r] = b[r] - factor * b[col];
    }
  }
  std::vector<LocalFieldElement> x(n, b[0]);
  for (std::size_t i = n; i-- > 0;) {
    LocalFieldElement s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s = s - a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

LocalPoint newton(const VarietyModel& model, const LocalField& field, std::vector<LocalFieldElement> x,
                  const std::vector<int>& pivots, int normalization) {
  const std::size_t r = model.equations.size();
  std::vector<std::vector<MultiPolynomial>> jac(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (int v : pivots) jac[i].push_back(model.equations[i].derivative(static_cast<std::size_t>(v)));
  }
  for (int iter = 0; iter < 64 && r > 0; ++iter) {
    std::vector<LocalFieldElement> f;
    bool done = true;
    for (const auto& eq : model.equations) {
      f.push_back(eq.evaluate(x));
      done = done && f.back().is_zero();
    }
    if (done) break;
    std::vector<std::vector<LocalFieldElement>> j(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (const auto& d : jac[i]) j[i].push_back(d.evaluate(x));
    }
    const auto delta = solve_linear(std::move(j), std::move(f));
    bool moved = false;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (!delta[k].is_zero()) moved = true;
      x[static_cast<std::size_t>(pivots[k])] = x[static_cast<std::size_t>(pivots[k])] - delta[k];
    }
    if (!moved) break;
  }
  LocalPoint out{field, std::move(x), normalization};
  if (r > 0) {
    // A lift must agree with the equations well past the residue depth.
    const int res = residual_valuation(model, out);
    if (res < 2 * field.e() + 4) throw PrecisionError("precision exhausted in Newton lifting");
  }
  return out;
}

class LocalSearch {
 public:
  LocalSearch(const VarietyModel& model, const LocalField& field, std::uint64_t budget,
              const std::vector<std::optional<LocalFieldElement>>* fixed = nullptr)
      : model_(model), field_(field), ring_(field, ResidueRing::max_digits(field)), budget_(budget) {
    const std::size_t n = model.dimension();
    known_ = ring_.precision();
    fixed_values_.assign(n, ring_.zero());
    is_fixed_.assign(n, false);
    if (fixed) {
      if (fixed->size() != n) throw std::invalid_argument("partial point has the wrong dimension");
      for (std::size_t i = 0; i < n; ++i) {
        if (!(*fixed)[i]) continue;
        const LocalFieldElement& v = *(*fixed)[i];
        if (!v.is_integral()) throw std::invalid_argument("fixed coordinates must be integral");
        const int prec = std::min(known_, v.absolute_precision());
        known_ = std::min(known_, prec);
        fixed_values_[i] = ring_.from_element(v, prec);
        fixed_elements_.emplace(i, v);
        is_fixed_[i] = true;
      }
    }
    for (const auto& eq : model.equations) {
      equations_.push_back(compile(ring_, eq));
      std::vector<Compiled> row;
      for (std::size_t v = 0; v < n; ++v) row.push_back(compile(ring_, eq.derivative(v)));
      jacobian_.push_back(std::move(row));
      supports_.push_back(eq.support());
    }
    max_weight_ = 1;
    for (int w : model.weights) max_weight_ = std::max(max_weight_, w);
    build_charts();
  }

  const ResidueRing& ring() const { return ring_; }
  // Children examined per expansion, before pruning.
  double branching() const {
    double b = 1;
    for (std::size_t i = 0; i < charts_.front().order.size(); ++i) b *= static_cast<double>(ring_.residue_size());
    return b;
  }
  std::uint64_t visited() const { return visited_; }
  bool certifies_empty() const { return fixed_elements_.empty() && model_.is_projective() && model_.open_conditions.empty(); }

  std::vector<Node> roots() const {
    std::vector<Node> out;
    for (std::size_t c = 0; c < charts_.size(); ++c) {
      Node node{static_cast<int>(c), 0, fixed_values_};
      if (charts_[c].fixed >= 0) node.x[static_cast<std::size_t>(charts_[c].fixed)] = ring_.one();
      out.push_back(std::move(node));
    }
    return out;
  }

  // Calls cb on each child at level + 1; cb returns false to stop. Returns false if stopped.
  bool expand(const Node& node, std::mt19937_64* rng, const std::function<bool(const Node&)>& cb) {
    const Chart& chart = charts_[static_cast<std::size_t>(node.chart)];
    Node child = node;
    child.level = node.level + 1;
    if (chart.order.empty()) {
      ++visited_;
      for (std::size_t e = 0; e < equations_.size(); ++e) {
        if (ring_.valuation(eval(ring_, equations_[e], child.x)) < child.level) return true;
      }
      return cb(child);
    }
    const Elem& pik = ring_.pi_power(node.level);
    const std::uint64_t q = ring_.residue_size();
    std::function<bool(std::size_t)> assign = [&](std::size_t pos) -> bool {
      if (pos == chart.order.size()) {
        if (chart.remainder && !primitive(child)) return true;
        return cb(child);
      }
      const auto var = static_cast<std::size_t>(chart.order[pos]);
      const Elem base = child.x[var];
      std::vector<std::uint64_t> digits;
      if (node.level == 0 && chart.zero_first_digit[var]) {
        digits.push_back(0);
      } else {
        digits.resize(q);
        std::iota(digits.begin(), digits.end(), 0);
        if (rng) {
          for (std::size_t i = digits.size(); i > 1; --i) std::swap(digits[i - 1], digits[uniform(*rng, i)]);
        }
      }
      for (std::uint64_t d : digits) {
        if (++visited_ > budget_) throw BudgetExceeded("residue search budget of " + std::to_string(budget_) + " exhausted");
        child.x[var] = d == 0 ? base : ring_.add(base, ring_.mul(ring_.digit(d), pik));
        bool ok = true;
        for (int e : chart.checks[pos]) {
          if (ring_.valuation(eval(ring_, equations_[static_cast<std::size_t>(e)], child.x)) < child.level) {
            ok = false;
            break;
          }
        }
        if (ok && !assign(pos + 1)) {
          child.x[var] = base;
          return false;
        }
      }
      child.x[var] = base;
      return true;
    };
    return assign(0);
  }

  std::optional<HenselData> hensel(const Node& node) const {
    const Chart& chart = charts_[static_cast<std::size_t>(node.chart)];
    HenselData h;
    h.vf = known_;
    for (const auto& eq : equations_) h.vf = std::min(h.vf, ring_.valuation(eval(ring_, eq, node.x)));
    const std::size_t r = equations_.size();
    if (r == 0) return h;
    const auto& free = chart.order;
    if (r > free.size()) return std::nullopt;
    std::vector<std::vector<Elem>> jac(r, std::vector<Elem>(free.size()));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < free.size(); ++j) {
        jac[i][j] = eval(ring_, jacobian_[i][static_cast<std::size_t>(free[j])], node.x);
      }
    }
    std::vector<std::vector<int>> combos;
    combinations(static_cast<int>(free.size()), static_cast<int>(r), combos);
    int best = known_;
    const std::vector<int>* best_cols = nullptr;
    for (const auto& cols : combos) {
      std::vector<std::vector<Elem>> m(r);
      for (std::size_t i = 0; i < r; ++i) {
        for (int c : cols) m[i].push_back(jac[i][static_cast<std::size_t>(c)]);
      }
      const int v = std::min(ring_.valuation(determinant(ring_, std::move(m))), known_);
      if (v < best) {
        best = v;
        best_cols = &cols;
      }
    }
    if (!best_cols || h.vf <= 2 * best || 2 * best >= known_) return std::nullopt;
    h.vj = best;
    for (int c : *best_cols) h.pivots.push_back(free[static_cast<std::size_t>(c)]);
    return h;
  }

  LocalPoint lift(const Node& node, const HenselData& h) const {
    std::vector<LocalFieldElement> x;
    for (std::size_t i = 0; i < node.x.size(); ++i) {
      auto it = fixed_elements_.find(i);
      x.push_back(it != fixed_elements_.end() ? it->second : ring_.to_element(node.x[i]));
    }
    return newton(model_, field_, std::move(x), h.pivots, charts_[static_cast<std::size_t>(node.chart)].fixed);
  }

  // Random digits below the Hensel radius on the non-pivot free coordinates.
  Node with_tail(const Node& node, const HenselData& h, std::mt19937_64& rng, int length) const {
    Node out = node;
    const int start = std::max(node.level, 2 * h.vj + 1);
    const std::uint64_t q = ring_.residue_size();
    for (int var : charts_[static_cast<std::size_t>(node.chart)].order) {
      if (std::find(h.pivots.begin(), h.pivots.end(), var) != h.pivots.end()) continue;
      Elem& c = out.x[static_cast<std::size_t>(var)];
      for (int t = start; t < start + length && t < known_; ++t) {
        c = ring_.add(c, ring_.mul(ring_.digit(uniform(rng, q)), ring_.pi_power(t)));
      }
    }
    return out;
  }

 private:
  bool primitive(const Node& node) const {
    if (node.level < max_weight_) return true;
    for (std::size_t j = 0; j < node.x.size(); ++j) {
      const int w = model_.weights[j];
      if (w > 1 && ring_.valuation(node.x[j]) < w) return true;
    }
    return false;
  }

  void build_charts() {
    const std::size_t n = model_.dimension();
    auto make = [&](int fixed, bool remainder, const std::vector<bool>& zero) {
      Chart c;
      c.fixed = fixed;
      c.remainder = remainder;
      c.zero_first_digit = zero;
      std::vector<bool> assigned(n, false);
      for (std::size_t i = 0; i < n; ++i) assigned[i] = is_fixed_[i] || static_cast<int>(i) == fixed;
      // Greedy order: finish the equation with the fewest open variables first.
      std::vector<bool> done(equations_.size(), false);
      while (true) {
        int pick = -1;
        std::size_t fewest = n + 1;
        for (std::size_t e = 0; e < equations_.size(); ++e) {
          std::size_t open = 0;
          int first = -1;
          for (auto v : supports_[e]) {
            if (!assigned[v]) {
              ++open;
              if (first < 0) first = static_cast<int>(v);
            }
          }
          if (open > 0 && open < fewest) {
            fewest = open;
            pick = first;
          }
        }
        if (pick < 0) {
          for (std::size_t i = 0; i < n; ++i) {
            if (!assigned[i]) {
              pick = static_cast<int>(i);
              break;
            }
          }
        }
        if (pick < 0) break;
        assigned[static_cast<std::size_t>(pick)] = true;
        c.order.push_back(pick);
      }
      c.checks.assign(c.order.size(), {});
      for (std::size_t e = 0; e < equations_.size(); ++e) {
        std::size_t last = 0;
        for (auto v : supports_[e]) {
          const auto it = std::find(c.order.begin(), c.order.end(), static_cast<int>(v));
          if (it != c.order.end()) last = std::max(last, static_cast<std::size_t>(it - c.order.begin()));
        }
        if (!c.order.empty()) c.checks[last].push_back(static_cast<int>(e));
      }
      charts_.push_back(std::move(c));
    };
    const std::vector<bool> none(n, false);
    if (!model_.is_projective() || !fixed_elements_.empty()) {
      make(-1, false, none);
      return;
    }
    // Chart i: coordinate i is 1 and earlier weight-1 coordinates vanish mod pi.
    std::vector<bool> zero(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (model_.weights[i] != 1) continue;
      make(static_cast<int>(i), false, zero);
      zero[i] = true;
    }
    if (model_.is_weighted()) make(-1, true, zero);
  }

  const VarietyModel& model_;
  LocalField field_;
  ResidueRing ring_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  int known_ = 0;
  int max_weight_ = 1;
  std::vector<Elem> fixed_values_;
  std::vector<bool> is_fixed_;
  std::map<std::size_t, LocalFieldElement> fixed_elements_;
  std::vector<Compiled> equations_;
  std::vector<std::vector<Compiled>> jacobian_;
  std::vector<std::vector<std::size_t>> supports_;
  std::vector<Chart> charts_;
};

// Iterative deepening until a Hensel point lifts into the open subset.
LocalSolvability deepening_search(LocalSearch& search, const VarietyModel& model, int max_depth) {
  LocalSolvability out;
  for (int k = 1; k <= max_depth; ++k) {
    bool reached = false;
    std::optional<LocalPoint> found;
    int found_depth = 0;
    std::function<bool(const Node&)> dfs = [&](const Node& node) -> bool {
      if (node.level >= 1) {
        if (auto h = search.hensel(node)) {
          try {
            LocalPoint p = search.lift(node, *h);
            if (satisfies_open_conditions(model, p)) {
              found = std::move(p);
              found_depth = node.level;
              return false;
            }
          } catch (const PrecisionError&) {
          }
        }
      }
      if (node.level == k) {
        reached = true;
        return true;
      }
      return search.expand(node, nullptr, dfs);
    };
    for (const Node& root : search.roots()) {
      if (!dfs(root)) break;
    }
    out.visited = search.visited();
    if (found) {
      out.outcome = Solvability::Yes;
      out.witness = std::move(found);
      out.depth = found_depth;
      return out;
    }
    if (!reached) {
      out.depth = k;
      if (search.certifies_empty()) {
        out.outcome = Solvability::No;
        out.reason = "no residue solutions mod pi^" + std::to_string(k);
      } else {
        out.outcome = Solvability::Inconclusive;
        out.reason = "no integral residue solutions mod pi^" + std::to_string(k) +
                     " (not a certificate for this model)";
      }
      return out;
    }
  }
  out.outcome = Solvability::Inconclusive;
  out.depth = max_depth;
  out.reason = "residue solutions exist mod pi^" + std::to_string(max_depth) + " but none passed the lifting criterion";
  return out;
}

}  // namespace

ResidueSolutions residue_solutions(const VarietyModel& model, const LocalField& field, int k, const SearchCaps& caps) {
  if (k < 1) throw std::invalid_argument("depth must be positive");
  LocalSearch search(model, field, caps.budget);
  ResidueSolutions out;
  out.depth = k;
  std::function<bool(const Node&)> dfs = [&](const Node& node) -> bool {
    if (node.level == k) {
      ResidueVector v;
      v.chart = node.chart;
      for (const auto& c : node.x) v.coords.push_back(search.ring().truncate(c, k));
      out.vectors.push_back(std::move(v));
      return true;
    }
    return search.expand(node, nullptr, dfs);
  };
  for (const Node& root : search.roots()) dfs(root);
  out.visited = search.visited();
  return out;
}

LocalPoint lift_point(const VarietyModel& model, const LocalField& field, const std::vector<LocalFieldElement>& approx,
                      int normalization) {
  const std::size_t n = model.dimension();
  if (approx.size() != n) throw std::invalid_argument("point has the wrong dimension");
  const std::size_t r = model.equations.size();
  if (r == 0) return LocalPoint{field, approx, normalization};
  int vf = kInfinitePrecision;
  for (const auto& eq : model.equations) {
    const LocalFieldElement v = eq.evaluate(approx);
    vf = std::min(vf, v.is_zero() ? v.absolute_precision() : v.valuation());
  }
  std::vector<int> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) != normalization) free.push_back(static_cast<int>(i));
  }
  std::vector<std::vector<LocalFieldElement>> jac(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (int v : free) jac[i].push_back(model.equations[i].derivative(static_cast<std::size_t>(v)).evaluate(approx));
  }
  std::vector<std::vector<int>> combos;
  combinations(static_cast<int>(free.size()), static_cast<int>(r), combos);
  int best = kInfinitePrecision;
  std::vector<int> pivots;
  for (const auto& cols : combos) {
    // Determinant by elimination on a copy; valuation of the product of pivots.
    std::vector<std::vector<LocalFieldElement>> m(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (int c : cols) m[i].push_back(jac[i][static_cast<std::size_t>(c)]);
    }
    int v = 0;
    bool singular = false;
    for (std::size_t col = 0; col < r && !singular; ++col) {
      std::size_t piv = r;
      int pv = 0;
      for (std::size_t row = col; row < r; ++row) {
        const auto cv = m[row][col].certified_valuation();
        if (cv && (piv == r || *cv < pv)) {
          piv = row;
          pv = *cv;
        }
      }
      if (piv == r) {
        singular = true;
        break;
      }
      std::swap(m[col], m[piv]);
      v += pv;
      for (std::size_t row = col + 1; row < r; ++row) {
        if (m[row][col].is_zero()) continue;
        const LocalFieldElement factor = m[row][col] / m[col][col];
        for (std::size_t k = col; k < r; ++k) m[row][k] = m[row][k] - factor * m[col][k];
      }
    }
    if (!singular && v < best) {
      best = v;
      pivots.clear();
      for (int c : cols) pivots.push_back(free[static_cast<std::size_t>(c)]);
    }
  }
  if (pivots.empty() || vf <= 2 * best) {
    throw HypothesisError("lifting criterion fails: val(F) = " + std::to_string(vf) +
                          ", best minor valuation " + (pivots.empty() ? std::string("none") : std::to_string(best)));
  }
  return newton(model, field, approx, pivots, normalization);
}

LocalSolvability has_local_point(const VarietyModel& model, const LocalField& field, const SearchCaps& caps) {
  LocalSolvability out;
  if (model.equations.empty()) {
    std::vector<LocalFieldElement> x(model.dimension(), field.one());
    out.outcome = Solvability::Yes;
    out.witness = LocalPoint{field, std::move(x), model.is_projective() ? 0 : -1};
    return out;
  }
  LocalSearch search(model, field, caps.budget);
  try {
    return deepening_search(search, model, caps.depth);
  } catch (const BudgetExceeded& e) {
    out.outcome = Solvability::Inconclusive;
    out.visited = search.visited();
    out.reason = e.what();
    return out;
  }
}

SampleResult sample_points(const VarietyModel& model, const LocalField& field, std::size_t n, std::uint64_t seed,
                           const SearchCaps& caps) {
  SampleResult out;
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  LocalSearch search(model, field, caps.budget);
  constexpr std::size_t kNodeCap = 4096;
  constexpr std::size_t kFrontierCap = 1 << 16;
  std::vector<std::pair<Node, HenselData>> classes;
  std::vector<Node> frontier = search.roots();
  int first_level = 0;
  try {
    for (int level = 0; level < caps.depth && !frontier.empty(); ++level) {
      std::vector<Node> next;
      for (const Node& node : frontier) {
        search.expand(node, &rng, [&](const Node& child) {
          if (auto h = search.hensel(child)) {
            classes.emplace_back(child, *h);
          } else {
            next.push_back(child);
          }
          return true;
        });
      }
      if (!classes.empty() && first_level == 0) first_level = level + 1;
      // Deeper levels only add classes that the first Hensel level missed; stop once there
      // are enough or the next sweep would be expensive.
      if (first_level > 0) {
        const double sweep = static_cast<double>(next.size()) * search.branching();
        if (level + 1 >= first_level + 2 || classes.size() >= std::max<std::size_t>(n, 64) ||
            classes.size() >= kNodeCap || sweep > static_cast<double>(caps.budget) / 20) {
          break;
        }
      }
      // Keep a random subset when the frontier grows too large.
      if (next.size() > kFrontierCap) {
        for (std::size_t i = 0; i < kFrontierCap; ++i) std::swap(next[i], next[i + uniform(rng, next.size() - i)]);
        next.resize(kFrontierCap);
      }
      frontier = std::move(next);
    }
  } catch (const BudgetExceeded&) {
    out.shortfall = true;
  }
  out.visited = search.visited();
  if (classes.empty()) {
    out.shortfall = true;
    return out;
  }
  for (std::size_t i = classes.size(); i > 1; --i) std::swap(classes[i - 1], classes[uniform(rng, i)]);
  const std::size_t attempts = 10 * n;
  for (std::size_t i = 0; i < attempts && out.points.size() < n; ++i) {
    const auto& [node, h] = classes[i % classes.size()];
    const Node tailed = search.with_tail(node, h, rng, 8);
    const auto h2 = search.hensel(tailed);
    if (!h2) continue;
    try {
      LocalPoint p = search.lift(tailed, *h2);
      if (satisfies_open_conditions(model, p)) out.points.push_back(std::move(p));
    } catch (const PrecisionError&) {
    }
  }
  if (out.points.size() < n) out.shortfall = true;
  return out;
}

LocalPoint complete_point(const VarietyModel& model, const LocalField& field,
                          const std::vector<std::optional<LocalFieldElement>>& partial, int depth,
                          std::uint64_t budget) {
  LocalSearch search(model, field, budget, &partial);
  const int k = depth > 0 ? depth : 4 * field.e() + 10;
  LocalSolvability r = deepening_search(search, model, k);
  if (r.outcome != Solvability::Yes) {
    throw InconclusiveError("could not complete the point: " + r.reason);
  }
  return *r.witness;
}

}  // namespace obstructor
