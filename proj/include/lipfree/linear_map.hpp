#pragma once

#include <cstddef>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/scalar.hpp"
#include "lipfree/space.hpp"

namespace lipfree {

// Dense row-major rows x cols matrix; an element of L(R^cols, R^rows).
template <class S>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<S> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, S(0)) {}

  S& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Point<S> apply(const Point<S>& x) const {
    if (x.size() != cols) throw DimensionMismatch("matrix/vector size mismatch");
    Point<S> y(rows, S(0));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) y[i] += (*this)(i, j) * x[j];
    }
    return y;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using LinearMap = Matrix<double>;

template <class S>
Matrix<double> to_double_matrix(const Matrix<S>& m) {
  Matrix<double> r(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) r.data[k] = to_double(m.data[k]);
  return r;
}

template <class S>
Matrix<Rational> to_rational_matrix(const Matrix<S>& m) {
  Matrix<Rational> r(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) {
    if constexpr (is_exact_v<S>) {
      r.data[k] = m.data[k];
    } else {
      r.data[k] = Rational(m.data[k]);
    }
  }
  return r;
}

// Operator norm sup{ |Tx|_Y : |x|_X <= 1 } for the configured norms.
// Vertex enumeration for l1/linf domains, dual vertices or an SVD for l2.
double operator_norm(const LinearMap& t, const Space& domain, const Space& codomain);

double max_abs_entry_difference(const LinearMap& a, const LinearMap& b);

}  // namespace lipfree
