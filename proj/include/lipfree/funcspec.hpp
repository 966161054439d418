#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lipfree/expr.hpp"
#include "lipfree/linear_map.hpp"
#include "lipfree/scalar.hpp"
#include "lipfree/space.hpp"

namespace lipfree {

// f: R^n -> R^m, one expression tree per output coordinate. Immutable after
// construction; evaluation is pure and thread-safe.
class FunctionSpec {
 public:
  FunctionSpec(Space domain, Space codomain, std::vector<ExprPtr> components);

  const Space& domain() const noexcept { return domain_; }
  const Space& codomain() const noexcept { return codomain_; }
  const std::vector<ExprPtr>& components() const noexcept { return components_; }

  // No sin/cos/native nodes: evaluation is available over the rationals.
  bool exact_capable() const noexcept { return exact_capable_; }

  // ';'-separated component text; re-parseable unless tables/native nodes occur.
  std::string to_string() const;

  template <class S>
  Point<S> operator()(const Point<S>& x) const;

 private:
  Space domain_;
  Space codomain_;
  std::vector<ExprPtr> components_;
  bool exact_capable_ = true;
};

template <class S>
Point<S> evaluate(const FunctionSpec& f, const Point<S>& x) {
  return f(x);
}

// Parses the expression grammar and enforces f(0) = 0: exactly when the body
// is exact-capable, within 1e-12 otherwise.
FunctionSpec parse_function(std::string_view text, const Space& domain, const Space& codomain);

// Sampled table; points must be distinct and include the origin mapped to 0.
FunctionSpec table_function(const Space& domain, const Space& codomain, std::vector<Point<Rational>> points,
                            std::vector<Point<Rational>> values);

FunctionSpec linear_function(const Space& domain, const Space& codomain, const Matrix<Rational>& t);
FunctionSpec linear_function(const Space& domain, const Space& codomain, const LinearMap& t);

// Float-only function given by callbacks, one per output coordinate.
FunctionSpec native_function(const Space& domain, const Space& codomain, std::vector<NativeFn> components);

// s*f + g.
FunctionSpec linear_combination(const Rational& s, const FunctionSpec& f, const FunctionSpec& g);

// x -> f(x) - T x.
FunctionSpec minus_linear(const FunctionSpec& f, const Matrix<Rational>& t);
FunctionSpec minus_linear(const FunctionSpec& f, const LinearMap& t);

// x -> f(x + c).
FunctionSpec translate(const FunctionSpec& f, const Point<Rational>& c);

// |f(0)| <= 1e-12, or exactly zero when exact-capable.
bool is_anchored(const FunctionSpec& f);

// max over distinct sample pairs of |f(x)-f(y)|_Y / |x-y|_X.
template <class S>
S lip_constant_on_sample(const FunctionSpec& f, const std::vector<Point<S>>& sample);

// Sorted distinct copy of the sample.
template <class S>
std::vector<Point<S>> distinct_points(std::vector<Point<S>> sample);

}  // namespace lipfree
