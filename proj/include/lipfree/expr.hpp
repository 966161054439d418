#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lipfree/scalar.hpp"
#include "lipfree/space.hpp"

namespace lipfree {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Scalar callback used for float-only functions built in code (not parseable).
using NativeFn = std::function<double(std::span<const double>)>;

// Finite lookup table f(points[i]) = values[i].
struct Table {
  std::vector<Point<Rational>> points;
  std::vector<Point<Rational>> values;
  std::vector<Point<double>> points_d;
  std::vector<Point<double>> values_d;

  // Index of x among the table points; throws PointNotInTable.
  std::size_t find(std::span<const double> x) const;
  std::size_t find(std::span<const Rational> x) const;
};

// Scalar-valued expression tree over the coordinates x0..x{n-1}.
class Expr {
 public:
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Abs, Min, Max, Sin, Cos, Shift, TableLookup, Native };

  Kind kind;
  Rational value;      // Const
  double value_d = 0;  // Const, cached
  std::size_t index = 0;  // Var coordinate, TableLookup component
  ExprPtr lhs;
  ExprPtr rhs;
  Point<Rational> offset;  // Shift: child evaluated at x + offset
  Point<double> offset_d;
  std::shared_ptr<const Table> table;
  std::shared_ptr<const NativeFn> native;

  explicit Expr(Kind k) : kind(k) {}
};

namespace expr {

ExprPtr constant(const Rational& q);
ExprPtr variable(std::size_t i);
ExprPtr neg(ExprPtr a);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr abs(ExprPtr a);
ExprPtr min(ExprPtr a, ExprPtr b);
ExprPtr max(ExprPtr a, ExprPtr b);
ExprPtr sin(ExprPtr a);
ExprPtr cos(ExprPtr a);
ExprPtr table_lookup(std::shared_ptr<const Table> t, std::size_t component);
ExprPtr native(std::shared_ptr<const NativeFn> fn);
ExprPtr shift(ExprPtr point_leaf, const Point<Rational>& offset);

// Rewrites e so that it evaluates to e(x + c).
ExprPtr translate(const ExprPtr& e, const Point<Rational>& c);

// True when the tree evaluates exactly over the rationals.
bool exact_capable(const Expr& e);

// (linear coefficients, constant) when e is affine in x, else nullopt.
std::optional<std::pair<Point<Rational>, Rational>> affine_form(const Expr& e, std::size_t dim);

std::string to_string(const Expr& e);

template <class S>
S evaluate(const Expr& e, std::span<const S> x);

// Parses one component expression; variables must satisfy index < dim.
ExprPtr parse(std::string_view text, std::size_t dim);

// Parses a ';'-separated list of component expressions.
std::vector<ExprPtr> parse_components(std::string_view text, std::size_t dim);

}  // namespace expr

}  // namespace lipfree
