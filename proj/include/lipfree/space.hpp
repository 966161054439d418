#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

enum class NormKind { L1, L2, LInf };

NormKind parse_norm_kind(std::string_view text);
std::string_view to_string(NormKind kind);

// A normed space R^n.
struct Space {
  std::size_t dim = 1;
  NormKind norm = NormKind::L2;

  Space() = default;
  Space(std::size_t d, NormKind k) : dim(d), norm(k) {
    if (d == 0) throw DimensionMismatch("space dimension must be positive");
  }

  friend bool operator==(const Space&, const Space&) = default;
};

template <class S>
using Point = std::vector<S>;

template <class S>
Point<S> zero_point(std::size_t dim) {
  return Point<S>(dim, S(0));
}

template <class S>
bool is_zero(const Point<S>& x) {
  for (const auto& c : x) {
    if (c != 0) return false;
  }
  return true;
}

template <class S>
Point<S> unit_vector(std::size_t dim, std::size_t j) {
  Point<S> e(dim, S(0));
  e.at(j) = S(1);
  return e;
}

template <class S>
void check_dim(const Space& space, const Point<S>& x) {
  if (x.size() != space.dim) {
    throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, space has dim " +
                            std::to_string(space.dim));
  }
}

template <class S>
Point<S> add(const Point<S>& a, const Point<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("point sizes differ");
  Point<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
Point<S> sub(const Point<S>& a, const Point<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("point sizes differ");
  Point<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
Point<S> scale(const S& s, const Point<S>& a) {
  Point<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// In exact mode the Euclidean norm is only available when the squared length
// is a perfect rational square; otherwise InexactOperation is thrown.
template <class S>
S norm(NormKind kind, const Point<S>& x) {
  S acc(0);
  switch (kind) {
    case NormKind::L1:
      for (const auto& c : x) acc += abs_value(c);
      return acc;
    case NormKind::LInf:
      for (const auto& c : x) {
        S a = abs_value(c);
        if (a > acc) acc = a;
      }
      return acc;
    case NormKind::L2: {
      std::size_t nonzero = 0;
      S single(0);
      for (const auto& c : x) {
        acc += c * c;
        if (c != 0) {
          ++nonzero;
          single = abs_value(c);
        }
      }
      if (nonzero <= 1) return single;
      if constexpr (is_exact_v<S>) {
        Rational root;
        if (!exact_sqrt(acc, root)) {
          throw InexactOperation("Euclidean length is irrational in exact mode; use float mode");
        }
        return root;
      } else {
        return std::sqrt(acc);
      }
    }
  }
  return acc;
}

template <class S>
S norm(const Space& space, const Point<S>& x) {
  return norm(space.norm, x);
}

template <class S>
S distance(const Space& space, const Point<S>& a, const Point<S>& b) {
  return norm(space.norm, sub(a, b));
}

template <class S>
Point<double> to_double_point(const Point<S>& x) {
  Point<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = to_double(x[i]);
  return r;
}

template <class S>
Point<S> convert_point(const Point<double>& x) {
  Point<S> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = from_double<S>(x[i]);
  return r;
}

}  // namespace lipfree
