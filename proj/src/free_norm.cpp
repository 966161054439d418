#include "lipfree/free_norm.hpp"

#include "lipfree/lp.hpp"
#include "transport.hpp"

namespace lipfree {

namespace {

template <class S>
void require_optimal(const LpSolution<S>& sol) {
  // Both LPs are feasible and bounded by construction; anything else is an engine fault.
  if (sol.status != LpStatus::Optimal) {
    throw CycleDetected(std::string("free-norm LP ended ") + std::string(to_string(sol.status)));
  }
}

}  // namespace

template <class S>
NormCertificate<S> free_norm_dual(const Molecule<S>& input) {
  const Molecule<S> m = is_canonical(input) ? input : canonicalize(input);
  NormCertificate<S> cert;
  if (m.empty()) return cert;
  const std::size_t k = m.terms.size();
  LpProblem<S> lp;
  for (const auto& t : m.terms) lp.add_variable(t.coeff);
  auto pair_rows = [&](std::size_t i, std::optional<std::size_t> j, const S& d) {
    std::vector<S> row(k, S(0));
    row[i] = S(1);
    if (j) row[*j] = S(-1);
    lp.add_constraint(row, Relation::LessEqual, d);
    for (auto& v : row) v = -v;
    lp.add_constraint(std::move(row), Relation::LessEqual, d);
  };
  for (std::size_t i = 0; i < k; ++i) {
    pair_rows(i, std::nullopt, norm(m.space, m.terms[i].point));
    for (std::size_t j = i + 1; j < k; ++j) pair_rows(i, j, distance(m.space, m.terms[i].point, m.terms[j].point));
  }
  auto sol = solve(lp);
  require_optimal(sol);
  cert.value = sol.value;
  cert.potential.push_back({zero_point<S>(m.space.dim), S(0)});
  for (std::size_t i = 0; i < k; ++i) cert.potential.push_back({m.terms[i].point, sol.witness[i]});
  return cert;
}

template <class S>
NormCertificate<S> free_norm_primal(const Molecule<S>& input) {
  const Molecule<S> m = is_canonical(input) ? input : canonicalize(input);
  NormCertificate<S> cert;
  if (m.empty()) return cert;
  const std::size_t k = m.terms.size();
  std::vector<Point<S>> nodes;
  for (const auto& t : m.terms) nodes.push_back(t.point);
  nodes.push_back(zero_point<S>(m.space.dim));  // base point, last

  LpProblem<S> lp;
  std::vector<S> dist;
  auto edges = detail::add_edge_variables(lp, m.space, nodes, S(-1), dist);
  for (std::size_t i = 0; i < k; ++i) {
    lp.add_constraint(detail::divergence_row<S>(lp.num_variables(), edges, i), Relation::Equal, m.terms[i].coeff);
  }
  auto sol = solve(lp);
  require_optimal(sol);
  cert.value = -sol.value;
  for (const auto& e : edges) {
    S net = sol.witness[e.forward] - sol.witness[e.backward];
    if (net > 0) cert.flow.push_back({nodes[e.i], nodes[e.j], net});
    if (net < 0) cert.flow.push_back({nodes[e.j], nodes[e.i], S(-net)});
  }
  return cert;
}

template <class S>
NormComparison<S> compare_norms(const Molecule<S>& m) {
  NormComparison<S> c{free_norm_dual(m), free_norm_primal(m), S(0)};
  c.gap = abs_value(S(c.dual.value - c.primal.value));
  return c;
}

template NormCertificate<double> free_norm_dual(const Molecule<double>&);
template NormCertificate<Rational> free_norm_dual(const Molecule<Rational>&);
template NormCertificate<double> free_norm_primal(const Molecule<double>&);
template NormCertificate<Rational> free_norm_primal(const Molecule<Rational>&);
template NormComparison<double> compare_norms(const Molecule<double>&);
template NormComparison<Rational> compare_norms(const Molecule<Rational>&);

}  // namespace lipfree
