#pragma once

// Shared LP builders for transshipment problems over a finite point set.

#include <cstddef>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/funcspec.hpp"
#include "lipfree/lp.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/space.hpp"

namespace lipfree::detail {

struct EdgeColumns {
  std::size_t i;
  std::size_t j;
  std::size_t forward;   // i -> j
  std::size_t backward;  // j -> i
};

// Adds nonnegative forward/backward flow variables for every unordered pair of
// nodes, each with objective weight `cost_sign` * distance. Returns the
// columns and the per-edge distances (same order).
template <class S>
std::vector<EdgeColumns> add_edge_variables(LpProblem<S>& lp, const Space& space, const std::vector<Point<S>>& nodes,
                                            const S& cost_sign, std::vector<S>& distances) {
  std::vector<EdgeColumns> edges;
  distances.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      S d = distance(space, nodes[i], nodes[j]);
      std::size_t f = lp.add_variable(S(cost_sign * d), S(0));
      std::size_t b = lp.add_variable(S(cost_sign * d), S(0));
      edges.push_back({i, j, f, b});
      distances.push_back(std::move(d));
    }
  }
  return edges;
}

// Row with out(node) - in(node) coefficients.
template <class S>
std::vector<S> divergence_row(std::size_t width, const std::vector<EdgeColumns>& edges, std::size_t node) {
  std::vector<S> row(width, S(0));
  for (const auto& e : edges) {
    if (e.i == node) {
      row[e.forward] += 1;
      row[e.backward] -= 1;
    } else if (e.j == node) {
      row[e.forward] -= 1;
      row[e.backward] += 1;
    }
  }
  return row;
}

// Distinct nonzero sample points; the sample must contain the origin and one
// other point, and the codomain must decompose componentwise.
template <class S>
std::vector<Point<S>> prepare_sample(const FunctionSpec& f, const std::vector<Point<S>>& sample) {
  if (f.codomain().dim > 1 && f.codomain().norm != NormKind::LInf) {
    throw UnsupportedCodomainNorm("codomain must carry the sup-norm (or be one-dimensional)");
  }
  auto pts = distinct_points(sample);
  bool has_origin = false;
  std::vector<Point<S>> nonzero;
  for (auto& p : pts) {
    check_dim(f.domain(), p);
    if (is_zero(p)) {
      has_origin = true;
    } else {
      nonzero.push_back(std::move(p));
    }
  }
  if (!has_origin) throw DegenerateSample("sample must contain the origin");
  if (nonzero.empty()) throw DegenerateSample("sample needs a point besides the origin");
  return nonzero;
}

template <class S>
struct BallSup {
  S value = S(0);
  Molecule<S> witness;
};

// max sum a_i values[i] over molecules a supported on `points` with
// transshipment cost <= 1, optionally restricted to beta = 0. Flows run on
// the complete graph over points + {0}.
template <class S>
BallSup<S> ball_sup(const Space& space, const std::vector<Point<S>>& points, const std::vector<S>& values,
                    bool kernel_only) {
  const std::size_t q = points.size();
  LpProblem<S> lp;
  for (std::size_t i = 0; i < q; ++i) lp.add_variable(values[i]);
  std::vector<Point<S>> nodes = points;
  nodes.push_back(zero_point<S>(space.dim));
  std::vector<S> dist;
  auto edges = add_edge_variables(lp, space, nodes, S(0), dist);
  const std::size_t width = lp.num_variables();
  for (std::size_t i = 0; i < q; ++i) {
    auto row = divergence_row<S>(width, edges, i);
    row[i] = S(-1);
    lp.add_constraint(std::move(row), Relation::Equal, S(0));
  }
  std::vector<S> cost(width, S(0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    cost[edges[e].forward] = dist[e];
    cost[edges[e].backward] = dist[e];
  }
  lp.add_constraint(std::move(cost), Relation::LessEqual, S(1));
  if (kernel_only) {
    for (std::size_t c = 0; c < space.dim; ++c) {
      std::vector<S> row(width, S(0));
      for (std::size_t i = 0; i < q; ++i) row[i] = points[i][c];
      lp.add_constraint(std::move(row), Relation::Equal, S(0));
    }
  }
  auto sol = solve(lp);
  if (sol.status != LpStatus::Optimal) {
    throw CycleDetected(std::string("pairing LP ended ") + std::string(to_string(sol.status)));
  }
  BallSup<S> out;
  out.value = sol.value;
  out.witness = Molecule<S>(space);
  for (std::size_t i = 0; i < q; ++i) out.witness.terms.push_back({sol.witness[i], points[i]});
  out.witness = canonicalize(out.witness);
  return out;
}

// Component k of f on each point.
template <class S>
std::vector<std::vector<S>> component_values(const FunctionSpec& f, const std::vector<Point<S>>& points) {
  std::vector<std::vector<S>> by_component(f.codomain().dim);
  for (const auto& p : points) {
    auto y = f(p);
    for (std::size_t k = 0; k < y.size(); ++k) by_component[k].push_back(y[k]);
  }
  return by_component;
}

}  // namespace lipfree::detail
