#pragma once

#include <vector>

#include "lipfree/funcspec.hpp"
#include "lipfree/linear_map.hpp"
#include "lipfree/molecule.hpp"

namespace lipfree {

template <class S>
struct DistanceResult {
  S value = S(0);
  Matrix<S> best;  // codomain.dim x domain.dim
};

// min over T of the sampled Lipschitz constant of f - T (one LP per codomain
// component). Sample requirements as for kernel_ball_sup.
template <class S>
DistanceResult<S> dist_to_linear(const FunctionSpec& f, const std::vector<Point<S>>& sample);

template <class S>
struct KernelBallResult {
  S value = S(0);
  Molecule<S> witness;  // beta(witness) = 0, free norm <= 1
};

// sup |<f, mu>| over mu in ker(beta) with free norm <= 1, supported on the
// sample. The sample must contain the origin; the codomain must carry the
// sup-norm or have dim 1 (UnsupportedCodomainNorm otherwise).
template <class S>
KernelBallResult<S> kernel_ball_sup(const FunctionSpec& f, const std::vector<Point<S>>& sample);

template <class S>
struct ThetaReport {
  DistanceResult<S> primal;
  KernelBallResult<S> dual;
  S gap = S(0);
};

// Throws IsometryViolation when the two sides differ by more than tol.
template <class S>
ThetaReport<S> theta_isometry_check(const FunctionSpec& f, const std::vector<Point<S>>& sample, const S& tol);

// (max - min)/2 over consecutive difference quotients of a scalar function on
// a 1-d sample (sorted internally).
template <class S>
S quotient_oracle_1d(const FunctionSpec& f, const std::vector<Point<S>>& sample);

}  // namespace lipfree
