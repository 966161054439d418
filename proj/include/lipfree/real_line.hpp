#pragma once

#include <vector>

#include "lipfree/molecule.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

// Piecewise-constant function on R: values[i] on the open interval
// (breaks[i], breaks[i+1]), zero outside [breaks.front(), breaks.back()].
// Values at breakpoints are never stored.
//
// Canonical form: strictly increasing breaks, equal neighbours merged, no zero
// value on the first or last interval. The zero function has no breaks.
struct StepFunction {
  std::vector<Rational> breaks;
  std::vector<Rational> values;

  // Indicator of (a, b) scaled by c; a < b.
  static StepFunction indicator(const Rational& a, const Rational& b, const Rational& c = Rational(1));

  bool is_zero() const noexcept { return values.empty(); }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

// Validates shape and ordering (throws FormatError) and returns canonical form.
StepFunction canonicalize(const StepFunction& s);

StepFunction operator+(const StepFunction& a, const StepFunction& b);
StepFunction operator-(const StepFunction& a, const StepFunction& b);
StepFunction operator*(const Rational& c, const StepFunction& s);

// Pointwise product, for pairing a derivative against an image.
StepFunction multiply(const StepFunction& a, const StepFunction& b);

// delta_x -> chi_(0,x) for x > 0, -chi_(x,0) for x < 0, extended linearly.
StepFunction phi_map(const Molecule<Rational>& m);

Rational l1_norm(const StepFunction& s);
Rational integral(const StepFunction& s);

// Integral of fprime * phi_map(m); fprime is extended outside its breakpoint
// span by its first and last values.
Rational pairing_via_derivative(const StepFunction& fprime, const Molecule<Rational>& m);

}  // namespace lipfree
