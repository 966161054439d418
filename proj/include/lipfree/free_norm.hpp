#pragma once

#include <utility>
#include <vector>

#include "lipfree/molecule.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree {

template <class S>
struct FlowEdge {
  Point<S> from;
  Point<S> to;
  S amount;  // > 0, shipped from -> to
};

// Dual certificates carry `potential` (a 1-Lipschitz f with f(0) = 0 on the
// support), primal ones carry `flow`. LP faces make both non-unique.
template <class S>
struct NormCertificate {
  S value = S(0);
  std::vector<std::pair<Point<S>, S>> potential;
  std::vector<FlowEdge<S>> flow;
};

// sup { sum a_i f(x_i) : |f(p) - f(q)| <= |p - q| on supp(m) + {0}, f(0) = 0 }.
template <class S>
NormCertificate<S> free_norm_dual(const Molecule<S>& m);

// Min-cost transshipment on the complete graph over supp(m) + {0}; the
// origin absorbs the imbalance.
template <class S>
NormCertificate<S> free_norm_primal(const Molecule<S>& m);

template <class S>
S free_norm(const Molecule<S>& m) {
  return free_norm_dual(m).value;
}

// Both forms side by side.
template <class S>
struct NormComparison {
  NormCertificate<S> dual;
  NormCertificate<S> primal;
  S gap = S(0);  // |dual - primal|
};

template <class S>
NormComparison<S> compare_norms(const Molecule<S>& m);

}  // namespace lipfree
