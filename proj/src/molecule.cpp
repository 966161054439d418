#include "lipfree/molecule.hpp"

#include <algorithm>

#include "lipfree/errors.hpp"

namespace lipfree {

template <class S>
Molecule<S> canonicalize(const Molecule<S>& m) {
  std::vector<Term<S>> terms;
  terms.reserve(m.terms.size());
  for (const auto& t : m.terms) {
    check_dim(m.space, t.point);
    if (t.coeff == 0 || is_zero(t.point)) continue;
    terms.push_back(t);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term<S>& a, const Term<S>& b) { return a.point < b.point; });
  std::vector<Term<S>> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().point == t.point) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term<S>& t) { return t.coeff == 0; });
  return Molecule<S>(m.space, std::move(merged));
}

template <class S>
bool is_canonical(const Molecule<S>& m) {
  for (std::size_t i = 0; i < m.terms.size(); ++i) {
    if (m.terms[i].coeff == 0 || is_zero(m.terms[i].point)) return false;
    if (i > 0 && !(m.terms[i - 1].point < m.terms[i].point)) return false;
  }
  return true;
}

template <class S>
Molecule<S> operator+(const Molecule<S>& a, const Molecule<S>& b) {
  if (a.space != b.space) throw SpaceMismatch("adding molecules on different spaces");
  Molecule<S> r(a.space, a.terms);
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return canonicalize(r);
}

template <class S>
Molecule<S> operator*(const S& s, const Molecule<S>& m) {
  Molecule<S> r(m.space, m.terms);
  for (auto& t : r.terms) t.coeff = s * t.coeff;
  return canonicalize(r);
}

template <class S>
Molecule<S> operator-(const Molecule<S>& a, const Molecule<S>& b) {
  return a + S(-1) * b;
}

template <class S>
Point<S> beta(const Molecule<S>& m) {
  Point<S> acc = zero_point<S>(m.space.dim);
  for (const auto& t : m.terms) {
    check_dim(m.space, t.point);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.coeff * t.point[i];
  }
  return acc;
}

template <class S>
bool is_kernel(const Molecule<S>& m, double tol) {
  auto b = beta(m);
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return is_zero(b);
  } else {
    return norm(m.space, b) <= tol;
  }
}

template <class S>
Molecule<S> elementary_kernel(const Space& space, const S& r, const Point<S>& x1, const Point<S>& x2) {
  check_dim(space, x1);
  check_dim(space, x2);
  Molecule<S> m(space);
  m.terms.push_back({S(-r), x1});
  m.terms.push_back({S(-1), x2});
  m.terms.push_back({S(1), add(scale(r, x1), x2)});
  return canonicalize(m);
}

template <class S>
Molecule<S> eta(const EtaPair<S>& p, double tol) {
  if (!is_kernel(p.kernel_part, tol)) throw NotKernel("eta: second component is not in ker(beta)");
  return Molecule<S>::delta(p.kernel_part.space, p.base) + p.kernel_part;
}

template <class S>
EtaPair<S> eta_inverse(const Molecule<S>& gamma) {
  auto b = beta(gamma);
  return EtaPair<S>{b, gamma - Molecule<S>::delta(gamma.space, b)};
}

template <class S>
Molecule<Rational> to_rational_molecule(const Molecule<S>& m) {
  Molecule<Rational> r(m.space);
  for (const auto& t : m.terms) {
    Point<Rational> p(t.point.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = Rational(t.point[i]);
    r.terms.push_back({Rational(t.coeff), std::move(p)});
  }
  return r;
}

template <class S>
Molecule<double> to_double_molecule(const Molecule<S>& m) {
  Molecule<double> r(m.space);
  for (const auto& t : m.terms) r.terms.push_back({to_double(t.coeff), to_double_point(t.point)});
  return r;
}

#define LIPFREE_INSTANTIATE(S)                                                                        \
  template Molecule<S> canonicalize(const Molecule<S>&);                                             \
  template bool is_canonical(const Molecule<S>&);                                                    \
  template Molecule<S> operator+(const Molecule<S>&, const Molecule<S>&);                            \
  template Molecule<S> operator-(const Molecule<S>&, const Molecule<S>&);                            \
  template Molecule<S> operator*(const S&, const Molecule<S>&);                                      \
  template Point<S> beta(const Molecule<S>&);                                                        \
  template bool is_kernel(const Molecule<S>&, double);                                               \
  template Molecule<S> elementary_kernel(const Space&, const S&, const Point<S>&, const Point<S>&);  \
  template Molecule<S> eta(const EtaPair<S>&, double);                                               \
  template EtaPair<S> eta_inverse(const Molecule<S>&);                                               \
  template Molecule<Rational> to_rational_molecule(const Molecule<S>&);                              \
  template Molecule<double> to_double_molecule(const Molecule<S>&);

LIPFREE_INSTANTIATE(double)
LIPFREE_INSTANTIATE(Rational)

#undef LIPFREE_INSTANTIATE

}  // namespace lipfree
