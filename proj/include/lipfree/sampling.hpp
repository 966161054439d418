#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lipfree/linear_map.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

// Deterministic generator. The std distributions are implementation-defined,
// so integers and reals are derived from raw mt19937_64 output directly to
// keep seeded runs reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Independent stream for (seed, stream), e.g. one per trial.
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return gen_(); }
  // Uniform on [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // k / denom with lo <= k / denom <= hi.
  Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t denom);

 private:
  std::mt19937_64 gen_;
};

Point<Rational> random_rational_point(Rng& rng, std::size_t dim, std::int64_t bound, std::int64_t denom);

// Canonical molecule with 1..max_terms support points (coordinates in
// [-bound, bound] on a 1/denom grid, coefficients in [-4, 4] on the same grid).
// May canonicalize to fewer terms, never to the zero molecule.
Molecule<Rational> random_molecule(Rng& rng, const Space& space, std::size_t max_terms, std::int64_t bound = 4,
                                   std::int64_t denom = 4);

Matrix<Rational> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound = 3,
                               std::int64_t denom = 4);

// Text of an anchored piecewise-affine scalar function: a sum of
// max/min/abs terms over linear forms without constants, plus a linear part.
std::string random_piecewise_affine(Rng& rng, std::size_t dim, std::size_t pieces = 3);

// Rational unit vector (Euclidean) from the inverse stereographic map, so
// multiples of it have rational l2 lengths.
Point<Rational> rational_unit_vector(Rng& rng, std::size_t dim);

}  // namespace lipfree
