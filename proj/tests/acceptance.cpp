// End-to-end acceptance run: one PASS/FAIL line per criterion.
// Randomness and reference values are generated here, independently of the
// library's own sampling helpers.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lipfree/duality.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/mean_projection.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/quotient.hpp"
#include "lipfree/real_line.hpp"

using namespace lipfree;
using Q = Rational;

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  Q rational(long bound, long denom) {
    long d = integer(1, denom);
    Q q(integer(-bound * d, bound * d), d);
    q.canonicalize();
    return q;
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  Point<Q> point(std::size_t dim, long bound = 4, long denom = 4) {
    Point<Q> p(dim);
    for (auto& c : p) c = rational(bound, denom);
    return p;
  }
  // Unit vector with rational coordinates: (2t, 1 - t^2) / (1 + t^2), lifted once more for dim 3.
  Point<Q> unit(std::size_t dim) {
    if (dim == 1) return {Q(1)};
    Q t = rational(3, 5);
    Point<Q> u{Q(2) * t / (1 + t * t), (1 - t * t) / (1 + t * t)};
    if (dim == 3) {
      Q s = rational(3, 5);
      Q k = 1 + s * s;
      u = {u[0] * 2 * s / k, u[1] * 2 * s / k, (1 - s * s) / k};
    }
    return u;
  }

 private:
  std::mt19937_64 eng_;
};

Q ref_norm(NormKind k, const Point<Q>& x) {
  Q acc(0);
  for (const auto& c : x) {
    Q a = abs(c);
    if (k == NormKind::LInf) {
      acc = std::max(acc, a);
    } else if (k == NormKind::L1) {
      acc += a;
    } else {
      acc += c * c;
    }
  }
  if (k != NormKind::L2) return acc;
  // Exact square root of a rational square.
  mpz_class n(acc.get_num()), d(acc.get_den()), rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  if (rn * rn != n || rd * rd != d) throw std::runtime_error("reference norm: not a rational square");
  return Q(rn, rd);
}

double ref_norm(NormKind k, const Point<double>& x) {
  double acc = 0;
  for (double c : x) {
    if (k == NormKind::LInf) {
      acc = std::max(acc, std::abs(c));
    } else if (k == NormKind::L1) {
      acc += std::abs(c);
    } else {
      acc += c * c;
    }
  }
  return k == NormKind::L2 ? std::sqrt(acc) : acc;
}

Point<Q> scaled(const Q& s, const Point<Q>& u) {
  Point<Q> r(u);
  for (auto& c : r) c *= s;
  return r;
}

Point<Q> diff(const Point<Q>& a, const Point<Q>& b) {
  Point<Q> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Point<double> as_double(const Point<Q>& p) {
  Point<double> r;
  for (const auto& c : p) r.push_back(c.get_d());
  return r;
}

Molecule<double> as_double(const Molecule<Q>& m) {
  Molecule<double> r(m.space);
  for (const auto& t : m.terms) r.terms.push_back({t.coeff.get_d(), as_double(t.point)});
  return r;
}

// Support point in the given space. Euclidean spaces of dim > 1 use a fixed
// rational line so that exact distances stay rational.
struct PointSource {
  Space space;
  Point<Q> dir;
  Point<Q> operator()(Gen& g) const {
    if (space.norm == NormKind::L2 && space.dim > 1) return scaled(g.rational(4, 4), dir);
    return g.point(space.dim);
  }
};

PointSource source(Gen& g, const Space& s) { return {s, g.unit(s.dim)}; }

Molecule<Q> random_molecule(Gen& g, const PointSource& src, std::size_t max_support) {
  Molecule<Q> m(src.space);
  auto k = static_cast<std::size_t>(g.integer(1, static_cast<long>(max_support)));
  for (std::size_t i = 0; i < k; ++i) {
    Q a = g.rational(4, 4);
    if (a == 0) a = 1;
    m.terms.push_back({a, src(g)});
  }
  return canonicalize(m);
}

Space random_space(Gen& g, std::size_t max_dim = 3) {
  static const NormKind kinds[] = {NormKind::L1, NormKind::L2, NormKind::LInf};
  return Space(static_cast<std::size_t>(g.integer(1, static_cast<long>(max_dim))), kinds[g.integer(0, 2)]);
}

std::string rat(const Q& q) { return "(" + q.get_str() + ")"; }

std::string linear_form(Gen& g, std::size_t dim) {
  std::string s;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i) s += " + ";
    s += rat(g.rational(3, 2)) + "*x" + std::to_string(i);
  }
  return s;
}

// Anchored piecewise-affine body built from max, min and abs of linear forms.
std::string piecewise_affine(Gen& g, std::size_t dim) {
  std::string s;
  long pieces = g.integer(1, 3);
  for (long p = 0; p < pieces; ++p) {
    if (p) s += " + ";
    switch (g.integer(0, 2)) {
      case 0:
        s += "max(" + linear_form(g, dim) + ", " + linear_form(g, dim) + ")";
        break;
      case 1:
        s += rat(g.rational(2, 2)) + "*min(" + linear_form(g, dim) + ", " + linear_form(g, dim) + ")";
        break;
      default:
        s += rat(g.rational(2, 2)) + "*abs(" + linear_form(g, dim) + ")";
        break;
    }
  }
  return s;
}

std::vector<Point<Q>> sample_with_origin(Gen& g, std::size_t dim, std::size_t size) {
  std::vector<Point<Q>> s{Point<Q>(dim, Q(0))};
  while (s.size() < size) {
    auto p = g.point(dim, 3, 2);
    if (std::find(s.begin(), s.end(), p) == s.end()) s.push_back(std::move(p));
  }
  return s;
}

std::vector<Point<double>> as_double(const std::vector<Point<Q>>& pts) {
  std::vector<Point<double>> r;
  for (const auto& p : pts) r.push_back(as_double(p));
  return r;
}

struct Tally {
  long cases = 0;
  long failures = 0;
  double worst = 0;
  std::string note;

  void check(bool ok) {
    ++cases;
    if (!ok) ++failures;
  }
  void measure(double err, double tol) {
    worst = std::max(worst, err);
    check(err <= tol);
  }
};

bool report(int id, const char* title, const Tally& t, double seconds) {
  bool pass = t.failures == 0 && t.cases > 0;
  std::printf("[%s] %d %s: %ld cases, %ld failures, worst %.3g, %.2fs%s%s\n", pass ? "PASS" : "FAIL", id, title,
              t.cases, t.failures, t.worst, seconds, t.note.empty() ? "" : "; ", t.note.c_str());
  std::fflush(stdout);
  return pass;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// 1. delta isometry.
Tally delta_isometry() {
  Tally t;
  Gen g(1001);
  for (int i = 0; i < 100; ++i) {
    Space s = random_space(g);
    auto src = source(g, s);
    auto x = src(g);
    auto y = src(g);
    auto dx = Molecule<Q>::delta(s, x);
    auto dxy = canonicalize(Molecule<Q>(s, {{Q(1), x}, {Q(-1), y}}));
    t.check(free_norm_dual(canonicalize(dx)).value == ref_norm(s.norm, x));
    t.check(free_norm_dual(dxy).value == ref_norm(s.norm, diff(x, y)));
    // Float mode on unrestricted points.
    auto xf = as_double(g.point(s.dim));
    auto yf = as_double(g.point(s.dim));
    Molecule<double> fx(s, {{1.0, xf}});
    Molecule<double> fxy(s, {{1.0, xf}, {-1.0, yf}});
    Point<double> d(xf);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= yf[k];
    t.measure(rel_err(free_norm_dual(canonicalize(fx)).value, ref_norm(s.norm, xf)), 1e-9);
    t.measure(rel_err(free_norm_dual(canonicalize(fxy)).value, ref_norm(s.norm, d)), 1e-9);
  }
  return t;
}

// 2 and 4 share molecules.
std::vector<Molecule<Q>> duality_molecules() {
  Gen g(1002);
  std::vector<Molecule<Q>> ms;
  for (int i = 0; i < 200; ++i) {
    Space s = random_space(g);
    ms.push_back(random_molecule(g, source(g, s), 6));
  }
  return ms;
}

Tally strong_duality(const std::vector<Molecule<Q>>& ms) {
  Tally t;
  Gen g(1003);
  for (const auto& m : ms) {
    t.check(free_norm_dual(m).value == free_norm_primal(m).value);
    // Float mode, with off-line Euclidean support.
    Molecule<double> f(m.space);
    for (const auto& term : m.terms) f.terms.push_back({term.coeff.get_d(), as_double(g.point(m.space.dim))});
    f = canonicalize(f);
    t.measure(rel_err(free_norm_dual(f).value, free_norm_primal(f).value), 1e-9);
  }
  return t;
}

Tally contraction(const std::vector<Molecule<Q>>& ms) {
  Tally t;
  for (const auto& m : ms) {
    t.check(ref_norm(m.space.norm, beta(m)) <= free_norm(m));
    auto f = as_double(m);
    t.measure(std::max(0.0, ref_norm(m.space.norm, beta(f)) - free_norm(f)), 1e-9);
  }
  return t;
}

// 3. Real line.
Tally real_line_exactness() {
  Tally t;
  Gen g(1003);
  const Space line(1, NormKind::L2);
  for (int i = 0; i < 200; ++i) {
    auto m = random_molecule(g, {line, {Q(1)}}, 6);
    if (i % 4 == 0 && !m.terms.empty()) {
      // Force a kernel molecule: subtract delta at the barycentre.
      m = m - Molecule<Q>::delta(line, beta(m));
    }
    auto s = phi_map(m);
    t.check(l1_norm(s) == free_norm_dual(m).value);
    t.check(integral(s) == beta(m)[0]);
    t.check(is_kernel(m) == (integral(s) == 0));
  }
  return t;
}

// 5. Hat isometry on samples.
Tally hat_isometry() {
  Tally t;
  Gen g(1005);
  int exact_cases = 0;
  for (int i = 0; i < 50; ++i) {
    Space s = random_space(g);
    std::size_t codim = static_cast<std::size_t>(g.integer(1, 2));
    std::string body = piecewise_affine(g, s.dim);
    for (std::size_t k = 1; k < codim; ++k) body += "; " + piecewise_affine(g, s.dim);
    auto f = parse_function(body, s, Space(codim, NormKind::LInf));
    auto sample = sample_with_origin(g, s.dim, 5);
    t.measure(hat_norm_check(f, as_double(sample)).gap, 1e-7);
    if (s.norm != NormKind::L2 || s.dim == 1) {
      t.check(hat_norm_check(f, sample).gap == 0);
      ++exact_cases;
    }
  }
  t.note = std::to_string(exact_cases) + " also exact (gap 0)";
  return t;
}

// 6. Linearity criterion.
Tally linearity() {
  Tally t;
  Gen g(1006);
  for (int i = 0; i < 20; ++i) {
    Space X = random_space(g);
    Space Y(static_cast<std::size_t>(g.integer(1, 3)), NormKind::LInf);
    Matrix<Q> m(Y.dim, X.dim);
    for (std::size_t r = 0; r < m.rows; ++r) {
      for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = g.rational(3, 4);
    }
    auto f = linear_function(X, Y, m);
    auto fl = linearity_test<double>(f, {200, 1e-8, {}, static_cast<std::uint64_t>(i)});
    t.check(fl.is_linear && fl.trials_run == 200 && !fl.witness);
    auto ex = linearity_test<Q>(f, {200, 0, {}, static_cast<std::uint64_t>(i)});
    t.check(ex.is_linear && ex.trials_run == 200 && !ex.witness);
  }
  const Space R1(1, NormKind::L2), Y1(1, NormKind::LInf);
  for (const char* body : {"abs(x0)", "max(x0, 2*x0)", "x0 + sin(x0)"}) {
    auto f = parse_function(body, R1, Y1);
    auto r = linearity_test<double>(f, {200, 1e-3, {}, 42});
    bool found = !r.is_linear && r.witness && is_kernel(*r.witness);
    // Recompute the pairing directly from the witness.
    double direct = 0;
    if (found) {
      for (const auto& term : r.witness->terms) direct += term.coeff * f(term.point)[0];
    }
    t.check(found && std::abs(direct) > 1e-3 && std::abs(direct - r.pairing[0]) <= 1e-12);
  }
  return t;
}

// 7. Projection.
Tally projection() {
  Tally t;
  Gen g(1007);
  static const NormKind kinds[] = {NormKind::L1, NormKind::L2, NormKind::LInf};
  auto sample_for = [&](std::size_t n) {
    std::vector<Point<double>> pts{Point<double>(n, 0.0)};
    for (int k = 0; k < 60; ++k) {
      Point<double> p(n);
      for (auto& c : p) c = g.real(-3, 3);
      pts.push_back(p);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Point<double> e(n, 0.0);
      e[j] = 1;
      pts.push_back(e);
    }
    return pts;
  };
  auto random_matrix = [&](std::size_t m, std::size_t n) {
    Matrix<Q> a(m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = g.rational(3, 4);
    }
    return a;
  };
  auto entry_error = [](const LinearMap& got, const Matrix<Q>& want) {
    double e = 0;
    for (std::size_t r = 0; r < want.rows; ++r) {
      for (std::size_t c = 0; c < want.cols; ++c) e = std::max(e, std::abs(got(r, c) - want(r, c).get_d()));
    }
    return e;
  };
  long bound_cases = 0;

  // Linear T, n, m <= 3: machine precision.
  for (int i = 0; i < 12; ++i) {
    std::size_t n = 1 + static_cast<std::size_t>(i % 3), m = 1 + static_cast<std::size_t>((i / 3) % 3);
    Space X(n, kinds[g.integer(0, 2)]), Y(m, kinds[g.integer(0, 2)]);
    auto a = random_matrix(m, n);
    auto d = decompose(linear_function(X, Y, a), sample_for(n), default_schedule(n), 1e-6, {0, 42});
    t.measure(entry_error(d.projection.map, a), 1e-15);
    if (d.projection.admissible) {
      ++bound_cases;
      t.check(d.holds());
    }
  }

  // T + sin components under the default (grid) schedule.
  double sin_worst = 0;
  // Every planar window shape is covered; the square one is the hardest for the grid.
  const std::pair<Space, std::size_t> sin_cases[] = {{Space(1, NormKind::L2), 1},   {Space(1, NormKind::L1), 3},
                                                     {Space(2, NormKind::L1), 2},   {Space(2, NormKind::L2), 1},
                                                     {Space(2, NormKind::LInf), 3}};
  for (const auto& [X, m] : sin_cases) {
    const std::size_t n = X.dim;
    Space Y(m, NormKind::LInf);
    auto a = random_matrix(m, n);
    std::string body;
    for (std::size_t r = 0; r < m; ++r) {
      if (r) body += "; ";
      for (std::size_t c = 0; c < n; ++c) body += rat(a(r, c)) + "*x" + std::to_string(c) + " + ";
      body += "sin(x" + std::to_string(r % n) + ")";
    }
    auto d = decompose(parse_function(body, X, Y), sample_for(n), default_schedule(n), 1e-6, {0, 42});
    double e = entry_error(d.projection.map, a);
    sin_worst = std::max(sin_worst, e);
    t.measure(e, 1e-3);
    if (d.projection.admissible) {
      ++bound_cases;
      t.check(d.holds());
    }
  }

  // abs: T = 0.
  const Space R1(1, NormKind::L2), Y1(1, NormKind::LInf);
  auto ad = decompose(parse_function("abs(x0)", R1, Y1), sample_for(1), default_schedule(1), 1e-6, {0, 42});
  t.measure(std::abs(ad.projection.map(0, 0)), 1e-3);
  t.check(ad.holds());
  ++bound_cases;

  // Three-dimensional sin perturbation under the Monte Carlo rule, reported only.
  Space X3(3, NormKind::L2);
  auto a3 = random_matrix(1, 3);
  std::string b3 = rat(a3(0, 0)) + "*x0 + " + rat(a3(0, 1)) + "*x1 + " + rat(a3(0, 2)) + "*x2 + sin(x0)";
  auto p3 = project_linear(parse_function(b3, X3, Y1), default_schedule(3), {0, 42});
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "sin worst %.2g (n<=2, grid); bound checked on %ld admissible maps; n=3 Monte Carlo sin case: "
                "error %.2g, admissible=%s (outside the grid clause)",
                sin_worst, bound_cases, entry_error(p3.map, a3), p3.admissible ? "yes" : "no");
  t.note = buf;
  return t;
}

// 8. Quotient isometry.
Tally quotient_isometry() {
  Tally t;
  Gen g(1008);
  static const NormKind kinds[] = {NormKind::L1, NormKind::LInf};
  int one_d = 0;
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 1 + static_cast<std::size_t>(i % 2);
    Space X(n, n == 1 ? NormKind::L2 : kinds[g.integer(0, 1)]);
    std::size_t codim = n == 1 ? 1 : static_cast<std::size_t>(g.integer(1, 2));
    std::string body = piecewise_affine(g, n);
    for (std::size_t k = 1; k < codim; ++k) body += "; " + piecewise_affine(g, n);
    auto f = parse_function(body, X, Space(codim, NormKind::LInf));
    auto sample = sample_with_origin(g, n, static_cast<std::size_t>(g.integer(2, 6)));
    auto r = theta_isometry_check(f, sample, Q(0));
    t.check(r.gap == 0 && r.primal.value == r.dual.value);
    if (n == 1) {
      ++one_d;
      t.check(quotient_oracle_1d(f, sample) == r.primal.value);
      // Half the spread of pairwise slopes.
      Q lo, hi;
      bool first = true;
      for (std::size_t a = 0; a < sample.size(); ++a) {
        for (std::size_t b = a + 1; b < sample.size(); ++b) {
          Q slope = (f(sample[a])[0] - f(sample[b])[0]) / (sample[a][0] - sample[b][0]);
          if (first || slope < lo) lo = slope;
          if (first || slope > hi) hi = slope;
          first = false;
        }
      }
      t.check((hi - lo) / 2 == r.primal.value);
    }
  }
  t.note = std::to_string(one_d) + " one-dimensional cases checked against the oracle";
  return t;
}

// 9. eta bounds.
Tally eta_bounds() {
  Tally t;
  Gen g(1009);
  for (int i = 0; i < 100; ++i) {
    Space s = random_space(g);
    auto src = source(g, s);
    auto m1 = random_molecule(g, src, 5);
    auto m2 = random_molecule(g, src, 5);
    auto p = eta_inverse(m1);
    auto q = eta_inverse(m2);
    t.check(eta(p) == m1 && eta(q) == m2);
    t.check(eta_inverse(eta(p)) == p);
    t.check(is_kernel(p.kernel_part) && is_kernel(q.kernel_part));
    // eta is 1-Lipschitz, eta^-1 is 3-Lipschitz, for the l1-sum norm on pairs.
    Q pair_dist = ref_norm(s.norm, diff(p.base, q.base)) + free_norm(p.kernel_part - q.kernel_part);
    Q mol_dist = free_norm(m1 - m2);
    t.check(mol_dist <= pair_dist);
    t.check(pair_dist <= 3 * mol_dist);
    if (mol_dist > 0) t.worst = std::max(t.worst, Q(pair_dist / mol_dist).get_d());
  }
  t.note = "worst = largest pair/molecule distance ratio (bound 3)";
  return t;
}

template <class F>
bool run(int id, const char* title, F&& body) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  try {
    t = body();
  } catch (const std::exception& e) {
    t.failures = 1;
    t.cases = std::max(t.cases, 1L);
    t.note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report(id, title, t, secs);
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "delta isometry", delta_isometry);
  auto ms = duality_molecules();
  ok &= run(2, "strong duality", [&] { return strong_duality(ms); });
  ok &= run(3, "real-line exactness", real_line_exactness);
  ok &= run(4, "beta contraction", [&] { return contraction(ms); });
  ok &= run(5, "hat isometry on samples", hat_isometry);
  ok &= run(6, "linearity criterion", linearity);
  ok &= run(7, "projection onto linear maps", projection);
  ok &= run(8, "quotient isometry", quotient_isometry);
  ok &= run(9, "eta bounds", eta_bounds);
  return ok ? 0 : 1;
}
