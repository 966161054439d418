#include "lipfree/funcspec.hpp"

#include <algorithm>
#include <cmath>

#include "lipfree/errors.hpp"

namespace lipfree {

FunctionSpec::FunctionSpec(Space domain, Space codomain, std::vector<ExprPtr> components)
    : domain_(domain), codomain_(codomain), components_(std::move(components)) {
  if (components_.size() != codomain_.dim) {
    throw DimensionMismatch("function has " + std::to_string(components_.size()) +
                            " components, codomain has dim " + std::to_string(codomain_.dim));
  }
  for (const auto& c : components_) {
    if (!c) throw DimensionMismatch("null component expression");
    exact_capable_ = exact_capable_ && expr::exact_capable(*c);
  }
}

std::string FunctionSpec::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (k) out += "; ";
    out += expr::to_string(*components_[k]);
  }
  return out;
}

template <class S>
Point<S> FunctionSpec::operator()(const Point<S>& x) const {
  check_dim(domain_, x);
  Point<S> y(components_.size());
  std::span<const S> view(x);
  for (std::size_t k = 0; k < components_.size(); ++k) y[k] = expr::evaluate<S>(*components_[k], view);
  return y;
}

template Point<double> FunctionSpec::operator()(const Point<double>&) const;
template Point<Rational> FunctionSpec::operator()(const Point<Rational>&) const;

bool is_anchored(const FunctionSpec& f) {
  if (f.exact_capable()) {
    return is_zero(f(zero_point<Rational>(f.domain().dim)));
  }
  auto y = f(zero_point<double>(f.domain().dim));
  for (double c : y) {
    if (!(std::abs(c) <= 1e-12)) return false;
  }
  return true;
}

FunctionSpec parse_function(std::string_view text, const Space& domain, const Space& codomain) {
  auto comps = expr::parse_components(text, domain.dim);
  if (comps.size() != codomain.dim) {
    throw SyntaxError("expected " + std::to_string(codomain.dim) + " ';'-separated components, got " +
                          std::to_string(comps.size()),
                      0);
  }
  FunctionSpec f(domain, codomain, std::move(comps));
  if (!is_anchored(f)) {
    throw NotAnchored("f(0) != 0 for '" + std::string(text) + "'");
  }
  return f;
}

FunctionSpec table_function(const Space& domain, const Space& codomain, std::vector<Point<Rational>> points,
                            std::vector<Point<Rational>> values) {
  if (points.size() != values.size()) throw DimensionMismatch("table points/values length mismatch");
  bool has_origin = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_dim(domain, points[i]);
    check_dim(codomain, values[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (points[j] == points[i]) throw DegenerateSample("table points must be pairwise distinct");
    }
    if (is_zero(points[i])) {
      has_origin = true;
      if (!is_zero(values[i])) throw NotAnchored("table maps the origin to a nonzero value");
    }
  }
  if (!has_origin) throw NotAnchored("table must contain the origin");
  auto table = std::make_shared<Table>();
  for (const auto& p : points) table->points_d.push_back(to_double_point(p));
  for (const auto& v : values) table->values_d.push_back(to_double_point(v));
  table->points = std::move(points);
  table->values = std::move(values);
  std::vector<ExprPtr> comps;
  for (std::size_t k = 0; k < codomain.dim; ++k) comps.push_back(expr::table_lookup(table, k));
  return FunctionSpec(domain, codomain, std::move(comps));
}

namespace {

// sum_j t(k, j) * x_j, skipping zero coefficients.
ExprPtr linear_row(const Matrix<Rational>& t, std::size_t k) {
  ExprPtr acc;
  for (std::size_t j = 0; j < t.cols; ++j) {
    const Rational& c = t(k, j);
    if (c == 0) continue;
    ExprPtr term = c == 1 ? expr::variable(j) : expr::mul(expr::constant(c), expr::variable(j));
    acc = acc ? expr::add(acc, term) : term;
  }
  return acc ? acc : expr::constant(Rational(0));
}

void check_shape(const Space& domain, const Space& codomain, std::size_t rows, std::size_t cols) {
  if (rows != codomain.dim || cols != domain.dim) {
    throw DimensionMismatch("linear map shape does not match domain/codomain");
  }
}

}  // namespace

FunctionSpec linear_function(const Space& domain, const Space& codomain, const Matrix<Rational>& t) {
  check_shape(domain, codomain, t.rows, t.cols);
  std::vector<ExprPtr> comps;
  for (std::size_t k = 0; k < t.rows; ++k) comps.push_back(linear_row(t, k));
  return FunctionSpec(domain, codomain, std::move(comps));
}

FunctionSpec linear_function(const Space& domain, const Space& codomain, const LinearMap& t) {
  return linear_function(domain, codomain, to_rational_matrix(t));
}

FunctionSpec native_function(const Space& domain, const Space& codomain, std::vector<NativeFn> components) {
  std::vector<ExprPtr> comps;
  for (auto& fn : components) comps.push_back(expr::native(std::make_shared<const NativeFn>(std::move(fn))));
  return FunctionSpec(domain, codomain, std::move(comps));
}

FunctionSpec linear_combination(const Rational& s, const FunctionSpec& f, const FunctionSpec& g) {
  if (f.domain() != g.domain() || f.codomain() != g.codomain()) {
    throw SpaceMismatch("linear_combination: functions live on different spaces");
  }
  std::vector<ExprPtr> comps;
  for (std::size_t k = 0; k < f.components().size(); ++k) {
    ExprPtr scaled = s == 1 ? f.components()[k] : expr::mul(expr::constant(s), f.components()[k]);
    comps.push_back(expr::add(scaled, g.components()[k]));
  }
  return FunctionSpec(f.domain(), f.codomain(), std::move(comps));
}

FunctionSpec minus_linear(const FunctionSpec& f, const Matrix<Rational>& t) {
  check_shape(f.domain(), f.codomain(), t.rows, t.cols);
  std::vector<ExprPtr> comps;
  for (std::size_t k = 0; k < t.rows; ++k) comps.push_back(expr::sub(f.components()[k], linear_row(t, k)));
  return FunctionSpec(f.domain(), f.codomain(), std::move(comps));
}

FunctionSpec minus_linear(const FunctionSpec& f, const LinearMap& t) {
  return minus_linear(f, to_rational_matrix(t));
}

FunctionSpec translate(const FunctionSpec& f, const Point<Rational>& c) {
  check_dim(f.domain(), c);
  std::vector<ExprPtr> comps;
  for (const auto& e : f.components()) comps.push_back(expr::translate(e, c));
  return FunctionSpec(f.domain(), f.codomain(), std::move(comps));
}

template <class S>
std::vector<Point<S>> distinct_points(std::vector<Point<S>> sample) {
  std::sort(sample.begin(), sample.end());
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  return sample;
}

template <class S>
S lip_constant_on_sample(const FunctionSpec& f, const std::vector<Point<S>>& sample) {
  auto pts = distinct_points(sample);
  if (pts.size() < 2) throw DegenerateSample("Lipschitz estimate needs at least two distinct points");
  std::vector<Point<S>> values;
  values.reserve(pts.size());
  for (const auto& p : pts) values.push_back(f(p));
  S best(0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      S num = norm(f.codomain(), sub(values[i], values[j]));
      S den = norm(f.domain(), sub(pts[i], pts[j]));
      S q = num / den;
      if (q > best) best = q;
    }
  }
  return best;
}

template std::vector<Point<double>> distinct_points(std::vector<Point<double>>);
template std::vector<Point<Rational>> distinct_points(std::vector<Point<Rational>>);
template double lip_constant_on_sample(const FunctionSpec&, const std::vector<Point<double>>&);
template Rational lip_constant_on_sample(const FunctionSpec&, const std::vector<Point<Rational>>&);

}  // namespace lipfree
