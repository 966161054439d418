#include "lipfree/mean_projection.hpp"

#include <cmath>

#include "lipfree/errors.hpp"
#include "lipfree/sampling.hpp"

namespace lipfree {

double WindowSchedule::radius(std::size_t level) const {
  return base_radius * std::pow(growth, static_cast<double>(level));
}

void WindowSchedule::validate() const {
  if (!(base_radius > 0)) throw Error("window schedule needs base_radius > 0");
  if (!(growth > 1)) throw Error("window schedule needs growth > 1");
  if (max_levels < 2) throw Error("window schedule needs at least two levels");
  if (const auto* g = std::get_if<GridRule>(&rule); g && g->points_per_dim < 2) {
    throw Error("grid rule needs at least two points per dimension");
  }
  if (const auto* m = std::get_if<MonteCarloRule>(&rule); m && m->samples == 0) {
    throw Error("monte carlo rule needs at least one sample");
  }
}

WindowSchedule default_schedule(std::size_t dim) {
  WindowSchedule s;
  if (dim >= 3) s.rule = MonteCarloRule{};
  return s;
}

FunctionSpec phi_translate(const FunctionSpec& f, const Point<Rational>& x) {
  return linear_combination(Rational(-1), f, translate(f, x));
}

namespace {

// Sum of g over the points of one window, accumulated per component.
class Accumulator {
 public:
  Accumulator(const FunctionSpec& g) : g_(g), sum_(g.codomain().dim, 0.0L) {}

  void add(std::span<const double> x) {
    for (std::size_t k = 0; k < sum_.size(); ++k) sum_[k] += expr::evaluate<double>(*g_.components()[k], x);
    ++count_;
  }

  Point<double> mean() const {
    Point<double> r(sum_.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = static_cast<double>(sum_[k] / static_cast<long double>(count_));
    return r;
  }

 private:
  const FunctionSpec& g_;
  std::vector<long double> sum_;
  std::size_t count_ = 0;
};

std::size_t grid_count(const GridRule& rule, const WindowSchedule& sched, std::size_t level, std::size_t dim) {
  double wanted = static_cast<double>(rule.points_per_dim - 1) * std::pow(sched.growth, static_cast<double>(level)) + 1;
  double cap = std::floor(std::pow(static_cast<double>(rule.max_points), 1.0 / static_cast<double>(dim)));
  auto n = static_cast<std::size_t>(std::max(2.0, std::min(std::round(wanted), cap)));
  if (n % 2 == 0) n = n > 2 ? n - 1 : 3;  // keep the origin on the grid
  return n;
}

Point<double> grid_average(const FunctionSpec& g, const Space& space, double radius, std::size_t n) {
  const std::size_t dim = space.dim;
  const double h = 2 * radius / static_cast<double>(n - 1);
  const double limit = radius * (1 + 1e-12);
  Accumulator acc(g);
  std::vector<std::size_t> idx(dim, 0);
  Point<double> x(dim);
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = -radius + h * static_cast<double>(idx[i]);
    if (norm(space, x) <= limit) acc.add(x);
    std::size_t d = 0;
    while (d < dim && ++idx[d] == n) idx[d++] = 0;
    if (d == dim) break;
  }
  return acc.mean();
}

Point<double> monte_carlo_average(const FunctionSpec& g, const Space& space, double radius, const MonteCarloRule& rule,
                                  std::size_t level) {
  Rng rng(rule.seed, level);
  Accumulator acc(g);
  Point<double> x(space.dim);
  for (std::size_t taken = 0; taken < rule.samples;) {
    for (auto& c : x) c = rng.uniform(-radius, radius);
    if (norm(space, x) > radius) continue;
    acc.add(x);
    ++taken;
  }
  return acc.mean();
}

double sup_distance(const Point<double>& a, const Point<double>& b) {
  return norm(NormKind::LInf, sub(a, b));
}

// Constant value when every component is affine with zero linear part.
std::optional<Point<double>> constant_value(const FunctionSpec& g) {
  Point<double> c;
  for (const auto& e : g.components()) {
    auto form = expr::affine_form(*e, g.domain().dim);
    if (!form || !is_zero(form->first)) return std::nullopt;
    c.push_back(form->second.get_d());
  }
  return c;
}

}  // namespace

MeanResult windowed_mean(const FunctionSpec& g, const WindowSchedule& sched) {
  sched.validate();
  MeanResult r;
  if (auto c = constant_value(g)) {
    r.levels.assign(sched.max_levels + 1, *c);
    r.constant_shortcut = true;
  } else {
    for (std::size_t k = 0; k <= sched.max_levels; ++k) {
      const double radius = sched.radius(k);
      if (const auto* grid = std::get_if<GridRule>(&sched.rule)) {
        r.levels.push_back(grid_average(g, g.domain(), radius, grid_count(*grid, sched, k, g.domain().dim)));
      } else {
        r.levels.push_back(monte_carlo_average(g, g.domain(), radius, std::get<MonteCarloRule>(sched.rule), k));
      }
    }
  }
  for (std::size_t k = 1; k < r.levels.size(); ++k) {
    if (sup_distance(r.levels[k], r.levels[k - 1]) <= sched.tol) {
      r.settled_level = k;
      break;
    }
  }
  const auto last = r.levels.size() - 1;
  r.value = r.levels[last];
  r.converged = sup_distance(r.levels[last], r.levels[last - 1]) <= sched.tol;
  return r;
}

ProjectionReport project_linear(const FunctionSpec& f, const WindowSchedule& sched, const ProjectionOptions& opts) {
  const std::size_t n = f.domain().dim;
  const std::size_t m = f.codomain().dim;
  ProjectionReport rep;
  rep.map = LinearMap(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = windowed_mean(phi_translate(f, unit_vector<Rational>(n, j)), sched);
    for (std::size_t k = 0; k < m; ++k) rep.map(k, j) = col.value[k];
    rep.admissible = rep.admissible && col.converged;
    rep.columns.push_back(std::move(col));
  }
  if (opts.additivity_probes > 0) {
    double worst = 0;
    for (std::size_t p = 0; p < opts.additivity_probes; ++p) {
      Rng rng(opts.seed, p);
      auto x = random_rational_point(rng, n, 2, 4);
      auto y = random_rational_point(rng, n, 2, 4);
      auto px = windowed_mean(phi_translate(f, x), sched).value;
      auto py = windowed_mean(phi_translate(f, y), sched).value;
      auto pxy = windowed_mean(phi_translate(f, add(x, y)), sched).value;
      worst = std::max(worst, sup_distance(pxy, add(px, py)));
    }
    rep.additivity_defect = worst;
  }
  return rep;
}

DecompositionReport decompose(const FunctionSpec& f, const std::vector<Point<double>>& sample,
                              const WindowSchedule& sched, double tol, const ProjectionOptions& opts) {
  DecompositionReport r;
  r.projection = project_linear(f, sched, opts);
  r.tol = tol;
  r.lip = lip_constant_on_sample(f, sample);
  r.residual_lip = lip_constant_on_sample(minus_linear(f, r.projection.map), sample);
  r.operator_norm = operator_norm(r.projection.map, f.domain(), f.codomain());
  const double total = r.operator_norm + r.residual_lip;
  r.lower_ok = r.lip <= total + tol;
  r.upper_ok = total <= 3 * r.lip + tol;
  return r;
}

}  // namespace lipfree
