#include "lipfree/quotient.hpp"

#include "lipfree/errors.hpp"
#include "lipfree/lp.hpp"
#include "transport.hpp"

namespace lipfree {

template <class S>
DistanceResult<S> dist_to_linear(const FunctionSpec& f, const std::vector<Point<S>>& sample) {
  auto points = detail::prepare_sample(f, sample);
  points.push_back(zero_point<S>(f.domain().dim));
  const std::size_t n = f.domain().dim;
  auto values = detail::component_values(f, points);
  DistanceResult<S> out{S(0), Matrix<S>(f.codomain().dim, n)};
  for (std::size_t k = 0; k < values.size(); ++k) {
    // Variables T_k (free) then t; maximize -t.
    LpProblem<S> lp;
    for (std::size_t j = 0; j < n; ++j) lp.add_variable(S(0));
    const std::size_t t_col = lp.add_variable(S(-1), S(0));
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        Point<S> dx = sub(points[i], points[j]);
        S df = values[k][i] - values[k][j];
        S d = norm(f.domain(), dx);
        // +-(df - T.dx) <= t d
        std::vector<S> row(n + 1, S(0));
        for (std::size_t c = 0; c < n; ++c) row[c] = -dx[c];
        row[t_col] = -d;
        lp.add_constraint(row, Relation::LessEqual, S(-df));
        for (std::size_t c = 0; c < n; ++c) row[c] = dx[c];
        lp.add_constraint(std::move(row), Relation::LessEqual, df);
      }
    }
    auto sol = solve(lp);
    if (sol.status != LpStatus::Optimal) {
      throw CycleDetected(std::string("distance LP ended ") + std::string(to_string(sol.status)));
    }
    S v = -sol.value;
    for (std::size_t c = 0; c < n; ++c) out.best(k, c) = sol.witness[c];
    if (k == 0 || v > out.value) out.value = v;
  }
  return out;
}

template <class S>
KernelBallResult<S> kernel_ball_sup(const FunctionSpec& f, const std::vector<Point<S>>& sample) {
  auto points = detail::prepare_sample(f, sample);
  auto values = detail::component_values(f, points);
  KernelBallResult<S> out;
  out.witness = Molecule<S>(f.domain());
  for (std::size_t k = 0; k < values.size(); ++k) {
    auto best = detail::ball_sup(f.domain(), points, values[k], true);
    if (k == 0 || best.value > out.value) {
      out.value = best.value;
      out.witness = std::move(best.witness);
    }
  }
  return out;
}

template <class S>
ThetaReport<S> theta_isometry_check(const FunctionSpec& f, const std::vector<Point<S>>& sample, const S& tol) {
  ThetaReport<S> r{dist_to_linear(f, sample), kernel_ball_sup(f, sample), S(0)};
  r.gap = abs_value(S(r.primal.value - r.dual.value));
  if (r.gap > tol) {
    throw IsometryViolation("quotient distance " + format_scalar(r.primal.value) + " differs from kernel-ball sup " +
                            format_scalar(r.dual.value));
  }
  return r;
}

template <class S>
S quotient_oracle_1d(const FunctionSpec& f, const std::vector<Point<S>>& sample) {
  if (f.domain().dim != 1 || f.codomain().dim != 1) {
    throw NotOneDimensional("the 1-d oracle needs a scalar function on the real line");
  }
  auto pts = distinct_points(sample);
  if (pts.size() < 2) throw DegenerateSample("the 1-d oracle needs at least two distinct points");
  S lo(0);
  S hi(0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    S slope = (f(pts[i + 1])[0] - f(pts[i])[0]) / (pts[i + 1][0] - pts[i][0]);
    if (i == 0 || slope < lo) lo = slope;
    if (i == 0 || slope > hi) hi = slope;
  }
  return S((hi - lo) / 2);
}

template DistanceResult<double> dist_to_linear(const FunctionSpec&, const std::vector<Point<double>>&);
template DistanceResult<Rational> dist_to_linear(const FunctionSpec&, const std::vector<Point<Rational>>&);
template KernelBallResult<double> kernel_ball_sup(const FunctionSpec&, const std::vector<Point<double>>&);
template KernelBallResult<Rational> kernel_ball_sup(const FunctionSpec&, const std::vector<Point<Rational>>&);
template ThetaReport<double> theta_isometry_check(const FunctionSpec&, const std::vector<Point<double>>&,
                                                  const double&);
template ThetaReport<Rational> theta_isometry_check(const FunctionSpec&, const std::vector<Point<Rational>>&,
                                                    const Rational&);
template double quotient_oracle_1d(const FunctionSpec&, const std::vector<Point<double>>&);
template Rational quotient_oracle_1d(const FunctionSpec&, const std::vector<Point<Rational>>&);

}  // namespace lipfree
