#include "lipfree/verify.hpp"

#include <algorithm>
#include <cmath>

#include "lipfree/duality.hpp"
#include "lipfree/errors.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/io.hpp"
#include "lipfree/mean_projection.hpp"
#include "lipfree/quotient.hpp"
#include "lipfree/real_line.hpp"
#include "lipfree/sampling.hpp"

namespace lipfree {

bool SuiteReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"s2", "s3", "s4", "s5", "s6"};
  return names;
}

namespace {

constexpr double kRelTol = 1e-9;

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  void record(bool ok, double gap = 0) {
    ++r_.cases;
    if (!ok) ++r_.failures;
    if (std::isfinite(gap)) r_.worst = std::max(r_.worst, gap);
  }

  CheckResult done(std::string note = {}) {
    r_.note = std::move(note);
    return r_;
  }

 private:
  CheckResult r_;
};

template <class S>
S cast(const Rational& q) {
  return from_rational<S>(q);
}

template <class S>
Point<S> cast(const Point<Rational>& p) {
  Point<S> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = from_rational<S>(p[i]);
  return r;
}

template <class S>
Molecule<S> cast(const Molecule<Rational>& m) {
  if constexpr (is_exact_v<S>) {
    return m;
  } else {
    return canonicalize(to_double_molecule(m));
  }
}

template <class S>
double gap(const S& a, const S& b) {
  return to_double(abs_value(S(a - b)));
}

// Exact equality, or relative agreement in float mode.
template <class S>
bool agree(const S& a, const S& b, double rel = kRelTol) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

template <class S>
bool at_most(const S& a, const S& b, double rel = kRelTol) {
  if constexpr (is_exact_v<S>) {
    return a <= b;
  } else {
    return a <= b + rel * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

template <class S>
bool same_point(const Point<S>& a, const Point<S>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!agree(a[i], b[i], 1e-12)) return false;
  }
  return true;
}

// Equal in exact mode; in float mode equal up to rounding of coefficients and
// coordinates (terms whose coefficient cancels to rounding noise are ignored).
template <class S>
bool same_molecule(const Molecule<S>& a, const Molecule<S>& b) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    auto d = a - b;
    for (const auto& t : d.terms) {
      if (std::abs(t.coeff) > 1e-12) return false;
    }
    return true;
  }
}

Space random_space(Rng& rng, std::size_t max_dim = 3) {
  auto dim = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_dim)));
  static const NormKind kinds[] = {NormKind::L1, NormKind::L2, NormKind::LInf};
  return Space(dim, kinds[rng.integer(0, 2)]);
}

// In exact mode, Euclidean spaces of dim >= 2 get support on a line through a
// rational unit vector, so that every distance stays rational.
bool needs_line(const Space& s, bool exact) { return exact && s.norm == NormKind::L2 && s.dim > 1; }

Point<Rational> random_point(Rng& rng, const Space& s, const Point<Rational>& line) {
  if (line.empty()) return random_rational_point(rng, s.dim, 4, 4);
  return scale(rng.rational(-4, 4, 4), line);
}

Molecule<Rational> random_molecule_in(Rng& rng, const Space& s, bool exact, std::size_t max_terms = 6) {
  if (!needs_line(s, exact)) return random_molecule(rng, s, max_terms);
  auto u = rational_unit_vector(rng, s.dim);
  for (;;) {
    Molecule<Rational> m(s);
    auto count = rng.integer(1, static_cast<std::int64_t>(max_terms));
    for (std::int64_t i = 0; i < count; ++i) m.terms.push_back({rng.rational(-4, 4, 4), random_point(rng, s, u)});
    m = canonicalize(m);
    if (!m.empty()) return m;
  }
}

// ---------------------------------------------------------------- s3

template <class S>
std::vector<CheckResult> suite_s3(std::uint64_t seed) {
  constexpr bool exact = is_exact_v<S>;
  std::vector<CheckResult> out;
  {
    Tally t("delta_isometry");
    Rng rng(seed, 301);
    for (int i = 0; i < 60; ++i) {
      Space s = random_space(rng);
      Point<Rational> line = needs_line(s, exact) ? rational_unit_vector(rng, s.dim) : Point<Rational>{};
      auto x = cast<S>(random_point(rng, s, line));
      auto y = cast<S>(random_point(rng, s, line));
      if (x == y) y = scale(S(2), x);
      auto single = free_norm_dual(canonicalize(Molecule<S>::delta(s, x)));
      S nx = norm(s, x);
      t.record(agree(single.value, nx), gap(single.value, nx));
      auto diff = free_norm_dual(Molecule<S>::delta(s, x) - Molecule<S>::delta(s, y));
      S nxy = distance(s, x, y);
      t.record(agree(diff.value, nxy), gap(diff.value, nxy));
    }
    out.push_back(t.done());
  }
  Tally duality("strong_duality");
  Tally contraction("beta_contraction");
  Tally canon("canonical_form");
  Tally linear("beta_linearity");
  Rng rng(seed, 302);
  for (int i = 0; i < 60; ++i) {
    Space s = random_space(rng);
    auto m = cast<S>(random_molecule_in(rng, s, exact));
    auto c = compare_norms(m);
    duality.record(agree(c.dual.value, c.primal.value), to_double(c.gap));
    S nb = norm(s, beta(m));
    contraction.record(at_most(nb, c.dual.value), std::max(0.0, to_double(S(nb - c.dual.value))));
    canon.record(canonicalize(m) == m && beta(canonicalize(m)) == beta(m));
    auto m2 = cast<S>(random_molecule_in(rng, s, exact));
    S k = cast<S>(rng.rational(-3, 3, 4));
    auto lhs = beta(k * m + m2);
    auto rhs = add(scale(k, beta(m)), beta(m2));
    linear.record(agree(norm(NormKind::LInf, sub(lhs, rhs)), S(0)), to_double(norm(NormKind::LInf, sub(lhs, rhs))));
  }
  out.push_back(duality.done());
  out.push_back(contraction.done());
  out.push_back(canon.done());
  out.push_back(linear.done());
  {
    Tally trip("eta_round_trip");
    Tally one("eta_lipschitz_1");
    Tally three("eta_inverse_lipschitz_3");
    Rng r2(seed, 303);
    for (int i = 0; i < 40; ++i) {
      Space s = random_space(r2);
      // Shared line keeps both molecules in one rational configuration.
      Point<Rational> line = needs_line(s, exact) ? rational_unit_vector(r2, s.dim) : Point<Rational>{};
      auto draw = [&] {
        Molecule<Rational> m(s);
        auto count = r2.integer(1, 5);
        for (std::int64_t k = 0; k < count; ++k) m.terms.push_back({r2.rational(-4, 4, 4), random_point(r2, s, line)});
        return cast<S>(canonicalize(m));
      };
      auto m1 = draw();
      auto m2 = draw();
      auto p = eta_inverse(m1);
      auto q = eta_inverse(m2);
      auto back = eta_inverse(eta(p, 1e-9));
      bool ok = same_molecule(eta(p, 1e-9), m1) && same_point(back.base, p.base) &&
                same_molecule(back.kernel_part, p.kernel_part);
      if constexpr (!exact) ok = ok && is_kernel(p.kernel_part);
      trip.record(ok);
      S plus = S(distance(s, p.base, q.base) + free_norm(p.kernel_part - q.kernel_part));
      S d = free_norm(eta(p, 1e-9) - eta(q, 1e-9));
      one.record(at_most(d, plus), std::max(0.0, to_double(S(d - plus))));
      S fm = free_norm(m1 - m2);
      three.record(at_most(plus, S(3 * fm)), std::max(0.0, to_double(S(plus - 3 * fm))));
    }
    out.push_back(trip.done());
    out.push_back(one.done());
    out.push_back(three.done());
  }
  return out;
}

// ---------------------------------------------------------------- s4

template <class S>
std::vector<Point<S>> random_sample(Rng& rng, const Space& s, std::size_t count) {
  std::vector<Point<S>> pts{zero_point<S>(s.dim)};
  while (pts.size() < count) {
    auto p = cast<S>(random_rational_point(rng, s.dim, 3, 2));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

// Exact mode avoids the Euclidean norm off the line.
Space sample_space(Rng& rng, bool exact, std::size_t max_dim) {
  Space s = random_space(rng, max_dim);
  if (exact && s.norm == NormKind::L2 && s.dim > 1) s.norm = NormKind::L1;
  return s;
}

template <class S>
std::vector<CheckResult> suite_s4(std::uint64_t seed) {
  constexpr bool exact = is_exact_v<S>;
  std::vector<CheckResult> out;
  const Space scalar_y(1, NormKind::LInf);
  {
    Tally t("hat_norm_isometry");
    Rng rng(seed, 401);
    for (int i = 0; i < 25; ++i) {
      Space s = sample_space(rng, exact, 2);
      auto f = parse_function(random_piecewise_affine(rng, s.dim), s, scalar_y);
      auto r = hat_norm_check(f, random_sample<S>(rng, s, 5));
      t.record(exact ? r.gap == 0 : to_double(r.gap) <= 1e-7, to_double(r.gap));
    }
    out.push_back(t.done());
  }
  {
    Tally t("linear_maps_pass");
    Rng rng(seed, 402);
    for (int i = 0; i < 8; ++i) {
      auto n = static_cast<std::size_t>(rng.integer(1, 3));
      auto m = static_cast<std::size_t>(rng.integer(1, 3));
      Space X(n, NormKind::L1);
      Space Y(m, NormKind::LInf);
      auto f = linear_function(X, Y, random_matrix(rng, m, n));
      auto r = linearity_test<S>(f, {200, 1e-8, {}, seed + static_cast<std::uint64_t>(i)});
      t.record(r.is_linear && r.trials_run == 200);
    }
    out.push_back(t.done());
  }
  {
    Tally t("nonlinear_witness");
    std::vector<std::string> bodies{"abs(x0)", "max(x0, 2*x0)"};
    if (!exact) bodies.push_back("x0 + sin(x0)");
    Space X(1, NormKind::L2);
    for (const auto& b : bodies) {
      auto f = parse_function(b, X, scalar_y);
      auto r = linearity_test<S>(f, {200, 1e-8, {}, seed});
      bool ok = !r.is_linear && r.witness && is_kernel(*r.witness) && to_double(abs_value(r.pairing[0])) > 1e-3;
      t.record(ok);
    }
    out.push_back(t.done(exact ? "sin case needs float mode" : ""));
  }
  Tally bilinear("bilinearity");
  Tally factor("linear_factorization");
  Tally separate("non_degeneracy");
  Rng rng(seed, 403);
  for (int i = 0; i < 25; ++i) {
    Space s = sample_space(rng, exact, 3);
    auto f = parse_function(random_piecewise_affine(rng, s.dim), s, scalar_y);
    auto g = parse_function(random_piecewise_affine(rng, s.dim), s, scalar_y);
    Rational q = rng.rational(-2, 2, 4);
    auto m1 = cast<S>(random_molecule(rng, s, 5));
    auto m2 = cast<S>(random_molecule(rng, s, 5));
    S k = cast<S>(q);
    S a = pair(linear_combination(q, f, g), m1)[0];
    S b = k * pair(f, m1)[0] + pair(g, m1)[0];
    S c = pair(f, k * m1 + m2)[0];
    S d = k * pair(f, m1)[0] + pair(f, m2)[0];
    bilinear.record(agree(a, b) && agree(c, d), std::max(gap(a, b), gap(c, d)));

    auto t = random_matrix(rng, 1, s.dim);
    auto lin = linear_function(s, scalar_y, t);
    S via_pair = pair(lin, m1)[0];
    S via_beta = cast<S>(Rational(0));
    auto b1 = beta(m1);
    for (std::size_t j = 0; j < s.dim; ++j) via_beta += cast<S>(t(0, j)) * b1[j];
    factor.record(agree(via_pair, via_beta), gap(via_pair, via_beta));

    auto mr = random_molecule(rng, s, 5);
    auto hat = hat_potential(mr);
    bool ok = pair(hat, mr)[0] != 0;
    for (const auto& term : mr.terms) ok = ok && pair(f, Molecule<Rational>::delta(s, term.point)) == f(term.point);
    separate.record(ok);
  }
  out.push_back(bilinear.done());
  out.push_back(factor.done());
  out.push_back(separate.done());
  return out;
}

// ---------------------------------------------------------------- s5

template <class S>
std::vector<CheckResult> suite_s5(std::uint64_t seed) {
  constexpr bool exact = is_exact_v<S>;
  const Space scalar_y(1, NormKind::LInf);
  Tally theta("theta_isometry");
  Tally oracle("oracle_1d");
  Tally mono("sample_monotonicity");
  Tally linear("linear_is_zero");
  Rng rng(seed, 501);
  const S tol = exact ? S(0) : from_double<S>(1e-7);
  for (int i = 0; i < 30; ++i) {
    Space s = sample_space(rng, exact, 2);
    auto f = parse_function(random_piecewise_affine(rng, s.dim), s, scalar_y);
    auto size = static_cast<std::size_t>(rng.integer(3, 6));
    auto sample = random_sample<S>(rng, s, size);
    try {
      auto r = theta_isometry_check(f, sample, tol);
      theta.record(true, to_double(r.gap));
      if (s.dim == 1) {
        S o = quotient_oracle_1d(f, sample);
        oracle.record(agree(o, r.primal.value), gap(o, r.primal.value));
      }
      auto bigger = sample;
      bigger.push_back(cast<S>(random_rational_point(rng, s.dim, 3, 3)));
      auto r2 = theta_isometry_check(f, bigger, tol);
      mono.record(at_most(r.primal.value, r2.primal.value) && at_most(r.dual.value, r2.dual.value));
    } catch (const IsometryViolation&) {
      theta.record(false);
    }
    auto lin = linear_function(s, scalar_y, random_matrix(rng, 1, s.dim));
    auto z = theta_isometry_check(lin, sample, tol);
    linear.record(agree(z.primal.value, S(0)) && agree(z.dual.value, S(0)), to_double(z.primal.value));
  }
  return {theta.done(), oracle.done(), mono.done(), linear.done()};
}

// ---------------------------------------------------------------- s6

std::vector<CheckResult> suite_s6(std::uint64_t seed) {
  Tally iso("phi_isometry");
  Tally fact("beta_factorization");
  Tally kern("kernel_characterization");
  Tally lin("phi_linearity");
  Tally deriv("derivative_pairing");
  const Space line(1, NormKind::L2);
  auto abs_f = parse_function("abs(x0)", line, Space(1, NormKind::LInf));
  Rng rng(seed, 601);
  for (int i = 0; i < 60; ++i) {
    auto m = random_molecule(rng, line, 6);
    if (i % 3 == 0) {
      // Force some kernel elements.
      m = m - Molecule<Rational>::delta(line, beta(m));
      if (m.empty()) m = elementary_kernel(line, Rational(2), Point<Rational>{1}, Point<Rational>{3});
    }
    auto img = phi_map(m);
    Rational l1 = l1_norm(img);
    Rational fn = free_norm_dual(m).value;
    iso.record(l1 == fn, gap(l1, fn));
    fact.record(integral(img) == beta(m)[0]);
    kern.record(is_kernel(m) == (integral(img) == 0));
    auto m2 = random_molecule(rng, line, 6);
    Rational k = rng.rational(-3, 3, 4);
    lin.record(phi_map(k * m + m2) == k * img + phi_map(m2));
    auto sign = StepFunction{{Rational(-1), Rational(0), Rational(1)}, {Rational(-1), Rational(1)}};
    deriv.record(pairing_via_derivative(sign, m) == pair(abs_f, m)[0]);
  }
  return {iso.done(), fact.done(), kern.done(), lin.done(), deriv.done()};
}

// ---------------------------------------------------------------- s2

std::vector<CheckResult> suite_s2(std::uint64_t seed) {
  Tally exact_t("linear_recovery");
  Tally perturbed("oscillation_recovery");
  Tally abs_t("abs_projects_to_zero");
  Tally bound("decomposition_bound");
  Tally idem("idempotence");
  Rng rng(seed, 201);
  const ProjectionOptions no_probe{0, seed};
  for (int i = 0; i < 6; ++i) {
    auto n = static_cast<std::size_t>(rng.integer(1, 3));
    auto m = static_cast<std::size_t>(rng.integer(1, 3));
    Space X(n, NormKind::L2);
    Space Y(m, NormKind::LInf);
    auto t = random_matrix(rng, m, n);
    auto p = project_linear(linear_function(X, Y, t), default_schedule(n), no_probe);
    double err = max_abs_entry_difference(p.map, to_double_matrix(t));
    exact_t.record(err <= 1e-12, err);
    auto again = project_linear(linear_function(X, Y, p.map), default_schedule(n), no_probe);
    double e2 = max_abs_entry_difference(again.map, p.map);
    idem.record(e2 <= 1e-12, e2);
  }
  const Space X(1, NormKind::L2);
  const Space Y(1, NormKind::LInf);
  std::vector<Point<double>> sample;
  for (int k = -16; k <= 16; ++k) sample.push_back({k / 4.0});
  for (int i = 0; i < 3; ++i) {
    Rational c = rng.rational(-3, 3, 4);
    auto f = parse_function(format_rational(c) + "*x0 + sin(x0)", X, Y);
    auto d = decompose(f, sample, default_schedule(1), 1e-6, no_probe);
    double err = std::abs(d.projection.map(0, 0) - c.get_d());
    perturbed.record(err <= 1e-3, err);
    bound.record(d.holds());
  }
  auto d = decompose(parse_function("abs(x0)", X, Y), sample, default_schedule(1), 1e-6, no_probe);
  abs_t.record(std::abs(d.projection.map(0, 0)) <= 1e-3, std::abs(d.projection.map(0, 0)));
  bound.record(d.holds());
  return {exact_t.done(), idem.done(), perturbed.done(), abs_t.done(), bound.done()};
}

}  // namespace

SuiteReport run_suite(std::string_view name, std::uint64_t seed, Mode mode) {
  SuiteReport r;
  r.suite = std::string(name);
  r.seed = seed;
  r.mode = mode;
  const bool exact = mode == Mode::Exact;
  if (name == "s2") {
    r.mode = Mode::Float;
    r.checks = suite_s2(seed);
  } else if (name == "s3") {
    r.checks = exact ? suite_s3<Rational>(seed) : suite_s3<double>(seed);
  } else if (name == "s4") {
    r.checks = exact ? suite_s4<Rational>(seed) : suite_s4<double>(seed);
  } else if (name == "s5") {
    r.checks = exact ? suite_s5<Rational>(seed) : suite_s5<double>(seed);
  } else if (name == "s6") {
    r.mode = Mode::Exact;
    r.checks = suite_s6(seed);
  } else {
    throw Error("unknown suite '" + std::string(name) + "'");
  }
  return r;
}

std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed, Mode mode) {
  if (name != "all") return {run_suite(name, seed, mode)};
  std::vector<SuiteReport> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, seed, mode));
  return out;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"worst", c.worst},
                     {"passed", c.passed()}};
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return {{"suite", r.suite},
          {"seed", r.seed},
          {"mode", std::string(to_string(r.mode))},
          {"checks", std::move(checks)},
          {"passed", r.passed()}};
}

}  // namespace lipfree
