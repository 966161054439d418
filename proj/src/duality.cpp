#include "lipfree/duality.hpp"

#include <cmath>

#include "lipfree/errors.hpp"
#include "lipfree/sampling.hpp"
#include "transport.hpp"

namespace lipfree {

template <class S>
Point<S> pair(const FunctionSpec& f, const Molecule<S>& m) {
  if (f.domain() != m.space) throw SpaceMismatch("function domain differs from the molecule's space");
  Point<S> acc = zero_point<S>(f.codomain().dim);
  for (const auto& t : m.terms) {
    auto y = f(t.point);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += t.coeff * y[k];
  }
  return acc;
}

template <class S>
HatNormReport<S> hat_norm_check(const FunctionSpec& f, const std::vector<Point<S>>& sample) {
  auto points = detail::prepare_sample(f, sample);
  HatNormReport<S> r;
  r.lip_lower = lip_constant_on_sample(f, sample);
  auto values = detail::component_values(f, points);
  bool first = true;
  for (const auto& v : values) {
    auto best = detail::ball_sup(f.domain(), points, v, false);
    if (first || best.value > r.pairing_sup) {
      r.pairing_sup = best.value;
      r.witness = std::move(best.witness);
      first = false;
    }
  }
  r.gap = abs_value(S(r.pairing_sup - r.lip_lower));
  return r;
}

template <class S>
LinearityReport<S> linearity_test(const FunctionSpec& f, const LinearityOptions& opts) {
  const Space& space = f.domain();
  LinearityReport<S> report;
  report.pairing = zero_point<S>(f.codomain().dim);
  auto draw = [&](Rng& rng) -> S {
    if constexpr (is_exact_v<S>) {
      auto lo = static_cast<std::int64_t>(std::ceil(opts.box.lo * 64));
      auto hi = static_cast<std::int64_t>(std::floor(opts.box.hi * 64));
      return rng.rational(lo, hi, 64);
    } else {
      return rng.uniform(opts.box.lo, opts.box.hi);
    }
  };
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    Rng rng(opts.seed, trial);
    S r = draw(rng);
    Point<S> x1(space.dim);
    Point<S> x2(space.dim);
    for (auto& c : x1) c = draw(rng);
    for (auto& c : x2) c = draw(rng);
    ++report.trials_run;
    auto mol = elementary_kernel(space, r, x1, x2);
    auto value = pair(f, mol);
    if (to_double(norm(f.codomain(), value)) > opts.tol) {
      report.is_linear = false;
      report.witness = std::move(mol);
      report.pairing = std::move(value);
      break;
    }
  }
  return report;
}

FunctionSpec hat_potential(const Molecule<Rational>& input) {
  Molecule<Rational> m = canonicalize(input);
  if (m.empty()) throw DegenerateSample("the zero molecule is not separated by any function");
  const Point<Rational>& centre = m.terms.front().point;
  // Half the smallest sup-distance from the centre to the origin and to the other support points.
  Rational radius = norm(NormKind::LInf, centre);
  for (std::size_t i = 1; i < m.terms.size(); ++i) {
    Rational d = distance(Space(m.space.dim, NormKind::LInf), centre, m.terms[i].point);
    if (d < radius) radius = d;
  }
  radius /= 2;
  ExprPtr dist;
  for (std::size_t i = 0; i < centre.size(); ++i) {
    ExprPtr c = expr::abs(expr::sub(expr::variable(i), expr::constant(centre[i])));
    dist = dist ? expr::max(dist, c) : c;
  }
  ExprPtr body = expr::max(expr::constant(Rational(0)), expr::sub(expr::constant(radius), dist));
  return FunctionSpec(m.space, Space(1, NormKind::LInf), {body});
}

template Point<double> pair(const FunctionSpec&, const Molecule<double>&);
template Point<Rational> pair(const FunctionSpec&, const Molecule<Rational>&);
template HatNormReport<double> hat_norm_check(const FunctionSpec&, const std::vector<Point<double>>&);
template HatNormReport<Rational> hat_norm_check(const FunctionSpec&, const std::vector<Point<Rational>>&);
template LinearityReport<double> linearity_test(const FunctionSpec&, const LinearityOptions&);
template LinearityReport<Rational> linearity_test(const FunctionSpec&, const LinearityOptions&);

}  // namespace lipfree
