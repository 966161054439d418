#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lipfree/scalar.hpp"

namespace lipfree {

enum class Relation { LessEqual, Equal };

template <class S>
struct LpConstraint {
  std::vector<S> row;
  Relation relation = Relation::LessEqual;
  S rhs;
};

template <class S>
struct VariableBounds {
  std::optional<S> lower;
  std::optional<S> upper;
};

// maximize objective . v subject to the constraints and bounds.
// Variables without bounds are free; an empty `bounds` means all free.
template <class S>
struct LpProblem {
  std::vector<S> objective;
  std::vector<LpConstraint<S>> constraints;
  std::vector<VariableBounds<S>> bounds;

  std::size_t num_variables() const noexcept { return objective.size(); }

  // Appends a variable with zero-padded history in existing rows.
  std::size_t add_variable(S cost, std::optional<S> lower = std::nullopt, std::optional<S> upper = std::nullopt) {
    bounds.resize(objective.size());
    objective.push_back(std::move(cost));
    bounds.push_back({std::move(lower), std::move(upper)});
    for (auto& c : constraints) c.row.resize(objective.size(), S(0));
    return objective.size() - 1;
  }

  void add_constraint(std::vector<S> row, Relation rel, S rhs) {
    row.resize(objective.size(), S(0));
    constraints.push_back({std::move(row), rel, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

template <class S>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  S value = S(0);
  std::vector<S> witness;
  std::size_t pivots = 0;
};

inline constexpr std::size_t kMaxLpNonzeros = 20000;

// Dense two-phase tableau simplex with Bland's rule. Exact over the rationals;
// the double instantiation pivots with a 1e-10 threshold. An instance keeps
// private scratch state and must not be shared between threads.
template <class S>
class LpSolver {
 public:
  // Throws DimensionMismatch, SizeLimit, CycleDetected.
  LpSolution<S> solve(const LpProblem<S>& problem);

  std::size_t max_pivots = 200000;

 private:
  std::vector<std::vector<S>> tableau_;
  std::vector<std::size_t> basis_;
};

template <class S>
LpSolution<S> solve(const LpProblem<S>& problem) {
  LpSolver<S> solver;
  return solver.solve(problem);
}

// Largest violation of any constraint or bound by v (0 when feasible).
template <class S>
S max_violation(const LpProblem<S>& problem, const std::vector<S>& v);

}  // namespace lipfree
