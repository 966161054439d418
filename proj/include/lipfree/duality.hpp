#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lipfree/funcspec.hpp"
#include "lipfree/molecule.hpp"

namespace lipfree {

// <f, m> = sum a_i f(x_i), a point of the codomain.
template <class S>
Point<S> pair(const FunctionSpec& f, const Molecule<S>& m);

template <class S>
struct HatNormReport {
  S lip_lower = S(0);     // sampled Lipschitz constant
  S pairing_sup = S(0);   // sup |<f, mu>| over |mu| <= 1, supp(mu) in the sample
  S gap = S(0);
  Molecule<S> witness;    // attaining mu
};

// The sample must contain the origin and at least one other point. The
// codomain must carry the sup-norm or have dim 1.
template <class S>
HatNormReport<S> hat_norm_check(const FunctionSpec& f, const std::vector<Point<S>>& sample);

struct Box {
  double lo = -10;
  double hi = 10;
};

struct LinearityOptions {
  std::size_t trials = 200;
  double tol = 1e-8;
  Box box;
  std::uint64_t seed = 42;
};

template <class S>
struct LinearityReport {
  bool is_linear = true;
  std::size_t trials_run = 0;
  std::optional<Molecule<S>> witness;  // first violating elementary kernel molecule
  Point<S> pairing;                    // <f, witness>
};

// One-sided randomized check of <f, mu> = 0 on elementary kernel molecules
// with r, x1, x2 drawn from the box. Exact mode draws rationals on a 1/64 grid.
template <class S>
LinearityReport<S> linearity_test(const FunctionSpec& f, const LinearityOptions& opts = {});

// Piecewise-affine scalar f with <f, m> != 0 for a nonzero canonical m: a
// sup-norm tent centred at one support point, too narrow to reach the others
// or the origin.
FunctionSpec hat_potential(const Molecule<Rational>& m);

}  // namespace lipfree
