#pragma once

#include <cstddef>
#include <vector>

#include "lipfree/scalar.hpp"
#include "lipfree/space.hpp"

namespace lipfree {

template <class S>
struct Term {
  S coeff;
  Point<S> point;

  friend bool operator==(const Term&, const Term&) = default;
};

// Finitely supported element sum_i a_i delta_{x_i} of the free space.
//
// Canonical form: pairwise-distinct points in lexicographic order, no zero
// coefficients, and no term at the origin (delta_0 annihilates every f with
// f(0) = 0). The empty term list is the zero molecule.
template <class S>
struct Molecule {
  Space space;
  std::vector<Term<S>> terms;

  Molecule() = default;
  explicit Molecule(Space s) : space(s) {}
  Molecule(Space s, std::vector<Term<S>> t) : space(s), terms(std::move(t)) {}

  static Molecule delta(const Space& s, Point<S> x, S coeff = S(1)) {
    check_dim(s, x);
    return Molecule(s, {Term<S>{std::move(coeff), std::move(x)}});
  }

  bool empty() const noexcept { return terms.empty(); }

  friend bool operator==(const Molecule&, const Molecule&) = default;
};

template <class S>
Molecule<S> canonicalize(const Molecule<S>& m);

template <class S>
bool is_canonical(const Molecule<S>& m);

// Canonical results.
template <class S>
Molecule<S> operator+(const Molecule<S>& a, const Molecule<S>& b);
template <class S>
Molecule<S> operator-(const Molecule<S>& a, const Molecule<S>& b);
template <class S>
Molecule<S> operator*(const S& s, const Molecule<S>& m);

// beta(sum a_i delta_{x_i}) = sum a_i x_i.
template <class S>
Point<S> beta(const Molecule<S>& m);

// beta(m) == 0 in exact mode; |beta(m)|_X <= tol in float mode.
template <class S>
bool is_kernel(const Molecule<S>& m, double tol = 1e-9);

// -r delta_{x1} - delta_{x2} + delta_{r x1 + x2}, canonicalized.
template <class S>
Molecule<S> elementary_kernel(const Space& space, const S& r, const Point<S>& x1, const Point<S>& x2);

// (x, mu) in X (+)_1 ker(beta).
template <class S>
struct EtaPair {
  Point<S> base;
  Molecule<S> kernel_part;

  friend bool operator==(const EtaPair&, const EtaPair&) = default;
};

// delta_x + mu; throws NotKernel when mu is not in ker(beta).
template <class S>
Molecule<S> eta(const EtaPair<S>& p, double tol = 1e-9);

// (beta(gamma), gamma - delta_{beta(gamma)}).
template <class S>
EtaPair<S> eta_inverse(const Molecule<S>& gamma);

template <class S>
Molecule<Rational> to_rational_molecule(const Molecule<S>& m);
template <class S>
Molecule<double> to_double_molecule(const Molecule<S>& m);

}  // namespace lipfree
