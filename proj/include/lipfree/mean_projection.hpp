#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lipfree/funcspec.hpp"
#include "lipfree/linear_map.hpp"

namespace lipfree {

// Symmetric tensor grid. points_per_dim applies at the base radius; the
// spacing stays fixed as the window grows (so oscillations stay resolved)
// until the per-level point budget caps the count per dimension.
struct GridRule {
  std::size_t points_per_dim = 129;
  std::size_t max_points = std::size_t{1} << 20;
};

// Uniform samples in the window, fresh per level, seeded from (seed, level).
struct MonteCarloRule {
  std::size_t samples = 20000;
  std::uint64_t seed = 42;
};

// Windows are domain-norm balls of radius base_radius * growth^k, k = 0..max_levels.
struct WindowSchedule {
  double base_radius = 8;
  double growth = 2;
  std::size_t max_levels = 8;
  std::variant<GridRule, MonteCarloRule> rule = GridRule{};
  double tol = 1e-4;

  double radius(std::size_t level) const;
  // Throws Error unless base_radius > 0, growth > 1, max_levels >= 2.
  void validate() const;
};

// Grid for n <= 2, Monte Carlo for n >= 3.
WindowSchedule default_schedule(std::size_t dim);

// x' -> f(x + x') - f(x'). Bounded by Lip(f) |x| but not anchored.
FunctionSpec phi_translate(const FunctionSpec& f, const Point<Rational>& x);

struct MeanResult {
  Point<double> value;                       // last level
  bool converged = false;                    // |A_K - A_{K-1}| <= tol
  std::optional<std::size_t> settled_level;  // first k >= 1 with |A_k - A_{k-1}| <= tol
  std::vector<Point<double>> levels;         // A_0 .. A_K
  bool constant_shortcut = false;            // g recognised as constant, no integration
};

// Window averages of a bounded g. A non-converged result is the NotAdmissible
// outcome: reported through `converged`, never thrown.
MeanResult windowed_mean(const FunctionSpec& g, const WindowSchedule& sched);

struct ProjectionOptions {
  std::size_t additivity_probes = 1;  // 0 disables the diagnostic
  std::uint64_t seed = 42;
};

struct ProjectionReport {
  LinearMap map;                            // codomain.dim x domain.dim
  std::vector<MeanResult> columns;          // column j from phi_translate(f, e_j)
  bool admissible = true;                   // every column converged
  std::optional<double> additivity_defect;  // max |P(x+x') - P(x) - P(x')|, via fresh window means
};

ProjectionReport project_linear(const FunctionSpec& f, const WindowSchedule& sched, const ProjectionOptions& opts = {});

struct DecompositionReport {
  ProjectionReport projection;
  double lip = 0;            // sampled Lip(f)
  double residual_lip = 0;   // sampled Lip(f - T)
  double operator_norm = 0;  // |T|
  double tol = 0;
  bool lower_ok = false;     // Lip(f) <= |T| + residual_lip + tol
  bool upper_ok = false;     // |T| + residual_lip <= 3 Lip(f) + tol
  bool holds() const noexcept { return lower_ok && upper_ok; }
};

DecompositionReport decompose(const FunctionSpec& f, const std::vector<Point<double>>& sample,
                              const WindowSchedule& sched, double tol = 1e-6, const ProjectionOptions& opts = {});

}  // namespace lipfree
