#include "lipfree/sampling.hpp"

namespace lipfree {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? next() : next() % span);
}

double Rng::uniform(double lo, double hi) {
  double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Rational Rng::rational(std::int64_t lo, std::int64_t hi, std::int64_t denom) {
  Rational q(static_cast<long>(integer(lo * denom, hi * denom)), static_cast<unsigned long>(denom));
  q.canonicalize();
  return q;
}

Point<Rational> random_rational_point(Rng& rng, std::size_t dim, std::int64_t bound, std::int64_t denom) {
  Point<Rational> p(dim);
  for (auto& c : p) c = rng.rational(-bound, bound, denom);
  return p;
}

Molecule<Rational> random_molecule(Rng& rng, const Space& space, std::size_t max_terms, std::int64_t bound,
                                   std::int64_t denom) {
  for (;;) {
    auto count = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_terms)));
    Molecule<Rational> m(space);
    for (std::size_t i = 0; i < count; ++i) {
      m.terms.push_back({rng.rational(-4, 4, denom), random_rational_point(rng, space.dim, bound, denom)});
    }
    m = canonicalize(m);
    if (!m.empty()) return m;
  }
}

Matrix<Rational> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound, std::int64_t denom) {
  Matrix<Rational> t(rows, cols);
  for (auto& v : t.data) v = rng.rational(-bound, bound, denom);
  return t;
}

namespace {

std::string linear_form(Rng& rng, std::size_t dim) {
  std::string s;
  for (std::size_t i = 0; i < dim; ++i) {
    Rational c = rng.rational(-3, 3, 2);
    if (c == 0 && !(i + 1 == dim && s.empty())) continue;
    if (!s.empty()) s += " + ";
    s += "(" + format_rational(c) + ")*x" + std::to_string(i);
  }
  return s;
}

}  // namespace

std::string random_piecewise_affine(Rng& rng, std::size_t dim, std::size_t pieces) {
  std::string s = linear_form(rng, dim);
  for (std::size_t p = 0; p < pieces; ++p) {
    std::string a = linear_form(rng, dim);
    switch (rng.integer(0, 2)) {
      case 0:
        s += " + max(" + a + ", " + linear_form(rng, dim) + ")";
        break;
      case 1:
        s += " - min(" + a + ", " + linear_form(rng, dim) + ")";
        break;
      default:
        s += " + (" + format_rational(rng.rational(-2, 2, 2)) + ")*abs(" + a + ")";
        break;
    }
  }
  return s;
}

Point<Rational> rational_unit_vector(Rng& rng, std::size_t dim) {
  // (2t, |t|^2 - 1) / (|t|^2 + 1) for t in Q^{dim-1}.
  if (dim == 1) return {Rational(rng.integer(0, 1) ? 1 : -1)};
  Point<Rational> t = random_rational_point(rng, dim - 1, 3, 4);
  Rational sq(0);
  for (const auto& c : t) sq += c * c;
  Point<Rational> u(dim);
  for (std::size_t i = 0; i + 1 < dim; ++i) u[i] = 2 * t[i] / (sq + 1);
  u[dim - 1] = (sq - 1) / (sq + 1);
  return u;
}

}  // namespace lipfree
