#include "lipfree/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lipfree/errors.hpp"

namespace lipfree {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

template <class S>
struct Tolerance {
  static bool positive(const S& v) { return v > 0; }
  static bool negative(const S& v) { return v < 0; }
  static bool nonzero(const S& v) { return v != 0; }
};

template <>
struct Tolerance<double> {
  static constexpr double kEps = 1e-10;
  static bool positive(double v) { return v > kEps; }
  static bool negative(double v) { return v < -kEps; }
  static bool nonzero(double v) { return std::abs(v) > kEps; }
};

// Original variable v = offset + sum sign * column.
template <class S>
struct VariableMap {
  S offset = S(0);
  std::vector<std::pair<std::size_t, int>> columns;
};

}  // namespace

template <class S>
LpSolution<S> LpSolver<S>::solve(const LpProblem<S>& problem) {
  using Tol = Tolerance<S>;
  const std::size_t n = problem.objective.size();
  if (!problem.bounds.empty() && problem.bounds.size() != n) {
    throw DimensionMismatch("LP bounds list length differs from the number of variables");
  }
  std::size_t nonzeros = 0;
  for (const auto& c : problem.constraints) {
    if (c.row.size() != n) throw DimensionMismatch("LP constraint row length differs from objective length");
    nonzeros += static_cast<std::size_t>(std::count_if(c.row.begin(), c.row.end(), [](const S& v) { return v != 0; }));
  }
  if (nonzeros > kMaxLpNonzeros) {
    throw SizeLimit("LP has " + std::to_string(nonzeros) + " nonzeros (limit " + std::to_string(kMaxLpNonzeros) + ")");
  }

  // Standard form: every structural column is nonnegative.
  std::vector<VariableMap<S>> vars(n);
  std::size_t structural = 0;
  struct UpperRow {
    std::size_t column;
    S bound;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const VariableBounds<S> b = problem.bounds.empty() ? VariableBounds<S>{} : problem.bounds[j];
    if (b.lower && b.upper && *b.upper < *b.lower) {
      return LpSolution<S>{LpStatus::Infeasible, S(0), {}, 0};
    }
    if (b.lower) {
      vars[j].offset = *b.lower;
      vars[j].columns.push_back({structural, +1});
      if (b.upper) upper_rows.push_back({structural, S(*b.upper - *b.lower)});
      ++structural;
    } else if (b.upper) {
      vars[j].offset = *b.upper;
      vars[j].columns.push_back({structural, -1});
      ++structural;
    } else {
      vars[j].columns.push_back({structural, +1});
      vars[j].columns.push_back({structural + 1, -1});
      structural += 2;
    }
  }

  struct Row {
    std::vector<S> coeffs;  // over structural columns
    bool equality;
    bool flipped;  // originally <=, now >= after negation
    S rhs;
  };
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size() + upper_rows.size());
  for (const auto& c : problem.constraints) {
    Row r{std::vector<S>(structural, S(0)), c.relation == Relation::Equal, false, c.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      if (c.row[j] == 0) continue;
      r.rhs -= c.row[j] * vars[j].offset;
      for (auto [col, sign] : vars[j].columns) {
        if (sign > 0) {
          r.coeffs[col] += c.row[j];
        } else {
          r.coeffs[col] -= c.row[j];
        }
      }
    }
    rows.push_back(std::move(r));
  }
  for (const auto& u : upper_rows) {
    Row r{std::vector<S>(structural, S(0)), false, false, u.bound};
    r.coeffs[u.column] = S(1);
    rows.push_back(std::move(r));
  }
  for (auto& r : rows) {
    if (r.rhs < 0) {
      for (auto& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      r.flipped = !r.equality;
    }
  }

  // Columns: structural | slack/surplus | artificial | rhs.
  const std::size_t m = rows.size();
  std::size_t slack_count = 0;
  std::size_t art_count = 0;
  for (const auto& r : rows) {
    if (!r.equality) ++slack_count;
    if (r.equality || r.flipped) ++art_count;
  }
  const std::size_t first_slack = structural;
  const std::size_t first_art = structural + slack_count;
  const std::size_t total = first_art + art_count;
  const std::size_t rhs_col = total;

  tableau_.assign(m + 1, std::vector<S>(total + 1, S(0)));
  basis_.assign(m, 0);
  {
    std::size_t s = first_slack;
    std::size_t a = first_art;
    for (std::size_t i = 0; i < m; ++i) {
      auto& t = tableau_[i];
      for (std::size_t j = 0; j < structural; ++j) t[j] = rows[i].coeffs[j];
      t[rhs_col] = rows[i].rhs;
      if (!rows[i].equality) {
        t[s] = rows[i].flipped ? S(-1) : S(1);
        if (!rows[i].flipped) basis_[i] = s;
        ++s;
      }
      if (rows[i].equality || rows[i].flipped) {
        t[a] = S(1);
        basis_[i] = a;
        ++a;
      }
    }
  }

  std::size_t pivots = 0;
  auto pivot = [&](std::size_t r, std::size_t c) {
    if (++pivots > max_pivots) throw CycleDetected("simplex exceeded the pivot limit");
    auto& prow = tableau_[r];
    const S p = prow[c];
    for (auto& v : prow) {
      if (v != 0) v /= p;
    }
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
      if (i == r) continue;
      auto& row = tableau_[i];
      if (row[c] == 0) continue;
      const S factor = row[c];
      for (std::size_t j = 0; j <= total; ++j) {
        if (prow[j] != 0) row[j] -= factor * prow[j];
      }
      if constexpr (!is_exact_v<S>) row[c] = S(0);
    }
    basis_[r] = c;
  };

  // Bland: lowest-index improving column, lowest-index basic variable on ratio ties.
  // The objective row sits directly below the `row_count` constraint rows.
  auto run = [&](std::size_t row_count, std::size_t allowed_cols) -> bool {
    for (;;) {
      const auto& obj = tableau_[row_count];
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (Tol::negative(obj[j])) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return true;
      std::size_t leave = row_count;
      S best_ratio(0);
      for (std::size_t i = 0; i < row_count; ++i) {
        const S& a = tableau_[i][enter];
        if (!Tol::positive(a)) continue;
        S ratio = tableau_[i][rhs_col] / a;
        if (leave == row_count || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == row_count) return false;
      pivot(leave, enter);
    }
  };

  // Phase 1: maximize -sum(artificials).
  if (art_count > 0) {
    auto& obj = tableau_[m];
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < first_art) continue;
      for (std::size_t j = 0; j <= total; ++j) {
        if (j >= first_art && j < total) continue;
        obj[j] -= tableau_[i][j];
      }
    }
    run(m, total);
    S infeasibility = -tableau_[m][rhs_col];
    bool infeasible;
    if constexpr (is_exact_v<S>) {
      infeasible = infeasibility > 0;
    } else {
      double scale = 1.0;
      for (const auto& r : rows) scale = std::max(scale, std::abs(r.rhs));
      infeasible = infeasibility > 1e-9 * scale;
    }
    if (infeasible) return LpSolution<S>{LpStatus::Infeasible, S(0), {}, pivots};

    // Drive remaining artificials out of the basis; drop redundant rows.
    std::vector<bool> redundant(m, false);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < first_art) continue;
      std::size_t col = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (Tol::nonzero(tableau_[i][j])) {
          col = j;
          break;
        }
      }
      if (col == first_art) {
        redundant[i] = true;
      } else {
        pivot(i, col);
      }
    }
    if (std::find(redundant.begin(), redundant.end(), true) != redundant.end()) {
      std::vector<std::vector<S>> kept;
      std::vector<std::size_t> kept_basis;
      for (std::size_t i = 0; i < m; ++i) {
        if (redundant[i]) continue;
        kept.push_back(std::move(tableau_[i]));
        kept_basis.push_back(basis_[i]);
      }
      kept.push_back(std::move(tableau_[m]));
      tableau_ = std::move(kept);
      basis_ = std::move(kept_basis);
    }
  }
  const std::size_t rows_left = basis_.size();

  // Phase 2 objective row: reduced costs z_j - c_j over structural columns.
  std::vector<S> cost(total, S(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (auto [col, sign] : vars[j].columns) cost[col] = sign > 0 ? problem.objective[j] : S(-problem.objective[j]);
  }
  auto& obj = tableau_[rows_left];
  std::fill(obj.begin(), obj.end(), S(0));
  for (std::size_t j = 0; j < total; ++j) obj[j] = -cost[j];
  for (std::size_t i = 0; i < rows_left; ++i) {
    const S cb = cost[basis_[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= total; ++j) {
      if (tableau_[i][j] != 0) obj[j] += cb * tableau_[i][j];
    }
  }
  const bool bounded = run(rows_left, first_art);
  if (!bounded) return LpSolution<S>{LpStatus::Unbounded, S(0), {}, pivots};

  std::vector<S> x(total, S(0));
  for (std::size_t i = 0; i < rows_left; ++i) x[basis_[i]] = tableau_[i][rhs_col];
  LpSolution<S> sol;
  sol.status = LpStatus::Optimal;
  sol.pivots = pivots;
  sol.witness.assign(n, S(0));
  for (std::size_t j = 0; j < n; ++j) {
    S v = vars[j].offset;
    for (auto [col, sign] : vars[j].columns) {
      if (sign > 0) {
        v += x[col];
      } else {
        v -= x[col];
      }
    }
    sol.witness[j] = v;
  }
  sol.value = S(0);
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.witness[j];
  return sol;
}

template <class S>
S max_violation(const LpProblem<S>& problem, const std::vector<S>& v) {
  if (v.size() != problem.objective.size()) throw DimensionMismatch("witness length mismatch");
  S worst(0);
  auto note = [&](const S& amount) {
    if (amount > worst) worst = amount;
  };
  for (const auto& c : problem.constraints) {
    S lhs(0);
    for (std::size_t j = 0; j < v.size(); ++j) lhs += c.row[j] * v[j];
    S diff = lhs - c.rhs;
    if (c.relation == Relation::Equal) {
      note(abs_value(diff));
    } else {
      note(diff);
    }
  }
  for (std::size_t j = 0; j < problem.bounds.size(); ++j) {
    const auto& b = problem.bounds[j];
    if (b.lower) note(S(*b.lower - v[j]));
    if (b.upper) note(S(v[j] - *b.upper));
  }
  return worst;
}

template class LpSolver<double>;
template class LpSolver<Rational>;
template double max_violation(const LpProblem<double>&, const std::vector<double>&);
template Rational max_violation(const LpProblem<Rational>&, const std::vector<Rational>&);

}  // namespace lipfree
