#include "lipfree/linear_map.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace lipfree {

namespace {

constexpr std::size_t kMaxVertexDim = 20;

double row_norm(const LinearMap& t, std::size_t i, NormKind kind) {
  Point<double> row(t.cols);
  for (std::size_t j = 0; j < t.cols; ++j) row[j] = t(i, j);
  return norm(kind, row);
}

NormKind dual_of(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return NormKind::LInf;
    case NormKind::LInf:
      return NormKind::L1;
    case NormKind::L2:
      return NormKind::L2;
  }
  return kind;
}

// Max of |T v|_Y over the sign vertices v of the linf unit ball.
double max_over_cube_vertices(const LinearMap& t, NormKind y_norm) {
  if (t.cols > kMaxVertexDim) throw SizeLimit("operator norm: domain dimension too large");
  double best = 0.0;
  const std::size_t count = std::size_t{1} << t.cols;
  Point<double> v(t.cols);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t j = 0; j < t.cols; ++j) v[j] = (mask >> j) & 1U ? -1.0 : 1.0;
    best = std::max(best, norm(y_norm, t.apply(v)));
  }
  return best;
}

LinearMap transpose(const LinearMap& t) {
  LinearMap r(t.cols, t.rows);
  for (std::size_t i = 0; i < t.rows; ++i)
    for (std::size_t j = 0; j < t.cols; ++j) r(j, i) = t(i, j);
  return r;
}

}  // namespace

double operator_norm(const LinearMap& t, const Space& domain, const Space& codomain) {
  if (t.cols != domain.dim || t.rows != codomain.dim) {
    throw DimensionMismatch("operator_norm: matrix shape does not match spaces");
  }
  const NormKind y_norm = codomain.dim == 1 ? NormKind::LInf : codomain.norm;
  switch (domain.norm) {
    case NormKind::L1: {
      // Extreme points of the l1 ball are +-e_j.
      double best = 0.0;
      for (std::size_t j = 0; j < t.cols; ++j) {
        Point<double> col(t.rows);
        for (std::size_t i = 0; i < t.rows; ++i) col[i] = t(i, j);
        best = std::max(best, norm(y_norm, col));
      }
      return best;
    }
    case NormKind::LInf:
      return max_over_cube_vertices(t, y_norm);
    case NormKind::L2:
      break;
  }
  if (y_norm == NormKind::LInf) {
    double best = 0.0;
    for (std::size_t i = 0; i < t.rows; ++i) best = std::max(best, row_norm(t, i, dual_of(NormKind::L2)));
    return best;
  }
  if (y_norm == NormKind::L1) {
    // |T|_{2->1} = |T^T|_{inf->2}.
    return max_over_cube_vertices(transpose(t), NormKind::L2);
  }
  Eigen::MatrixXd m(t.rows, t.cols);
  for (std::size_t i = 0; i < t.rows; ++i)
    for (std::size_t j = 0; j < t.cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double max_abs_entry_difference(const LinearMap& a, const LinearMap& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("matrix shapes differ");
  double best = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) best = std::max(best, std::abs(a.data[k] - b.data[k]));
  return best;
}

}  // namespace lipfree
