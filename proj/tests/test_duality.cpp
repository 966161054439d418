#include <doctest.h>

#include <cmath>

#include "lipfree/duality.hpp"
#include "lipfree/errors.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/sampling.hpp"

using namespace lipfree;

namespace {

using Q = Rational;
const Space R1(1, NormKind::L2);
const Space Y1(1, NormKind::LInf);

Molecule<Q> mol(std::initializer_list<std::pair<long, long>> terms) {
  Molecule<Q> m(R1);
  for (auto [a, x] : terms) m.terms.push_back({Q(a), Point<Q>{Q(x)}});
  return canonicalize(m);
}

std::vector<Point<Q>> line(std::initializer_list<long> xs) {
  std::vector<Point<Q>> out;
  for (long x : xs) out.push_back({Q(x)});
  return out;
}

}  // namespace

TEST_CASE("pair examples") {
  auto sq = table_function(R1, Y1, line({0, 1, -1}), line({0, 1, 1}));
  CHECK(pair(sq, mol({{1, 1}, {1, -1}})) == Point<Q>{2});
  auto five = parse_function("5*x0", R1, Y1);
  CHECK(pair(five, mol({{2, 1}, {-1, 2}})) == Point<Q>{0});
  CHECK(pair(parse_function("abs(x0)", R1, Y1), Molecule<Q>(R1)) == Point<Q>{0});
  CHECK_THROWS_AS(pair(five, Molecule<Q>(Space(1, NormKind::L1))), SpaceMismatch);
}

TEST_CASE("hat_norm_check examples") {
  auto r = hat_norm_check(parse_function("abs(x0)", R1, Y1), line({-1, 0, 1}));
  CHECK(r.lip_lower == 1);
  CHECK(r.pairing_sup == 1);
  CHECK(r.gap == 0);
  // The witness lies in the unit ball and attains the supremum up to sign.
  CHECK(free_norm(r.witness) <= 1);
  CHECK(abs(pair(parse_function("abs(x0)", R1, Y1), r.witness)[0]) == 1);

  auto two = hat_norm_check(parse_function("2*x0", R1, Y1), line({0, 1, 2}));
  CHECK(two.lip_lower == 2);
  CHECK(two.pairing_sup == 2);

  auto zero = hat_norm_check(parse_function("0", R1, Y1), line({0, 1, 2}));
  CHECK(zero.lip_lower == 0);
  CHECK(zero.pairing_sup == 0);
}

TEST_CASE("hat_norm_check preconditions") {
  auto f = parse_function("abs(x0)", R1, Y1);
  CHECK_THROWS_AS(hat_norm_check(f, line({1, 2})), DegenerateSample);
  CHECK_THROWS_AS(hat_norm_check(f, line({0, 0})), DegenerateSample);
  auto g = parse_function("x0; abs(x0)", R1, Space(2, NormKind::L2));
  CHECK_THROWS_AS(hat_norm_check(g, line({0, 1})), UnsupportedCodomainNorm);
}

TEST_CASE("hat_norm_check on random piecewise-affine maps") {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    Space s(1 + static_cast<std::size_t>(i % 2), i % 3 ? NormKind::L1 : NormKind::LInf);
    Space y(1 + static_cast<std::size_t>(i % 2), NormKind::LInf);
    std::string body = random_piecewise_affine(rng, s.dim);
    if (y.dim == 2) body += "; " + random_piecewise_affine(rng, s.dim);
    auto f = parse_function(body, s, y);
    std::vector<Point<Q>> sample{zero_point<Q>(s.dim)};
    for (int k = 0; k < 4; ++k) sample.push_back(random_rational_point(rng, s.dim, 3, 2));
    if (distinct_points(sample).size() < 2) continue;
    auto r = hat_norm_check(f, sample);
    CHECK(r.gap == 0);
    CHECK(free_norm(r.witness) <= 1);
    // Float mode on Euclidean domains.
    Space e(s.dim, NormKind::L2);
    auto fe = parse_function(body, e, y);
    std::vector<Point<double>> sd;
    for (const auto& p : sample) sd.push_back(to_double_point(p));
    CHECK(hat_norm_check(fe, sd).gap <= 1e-7);
  }
}

TEST_CASE("linearity_test examples") {
  auto five = linearity_test<double>(parse_function("5*x0", R1, Y1));
  CHECK(five.is_linear);
  CHECK(five.trials_run == 200);
  CHECK_FALSE(five.witness);

  auto a = linearity_test<Q>(parse_function("abs(x0)", R1, Y1));
  CHECK_FALSE(a.is_linear);
  REQUIRE(a.witness);
  CHECK(is_kernel(*a.witness));
  CHECK(a.pairing != Point<Q>{0});

  auto s = linearity_test<double>(parse_function("x0 + sin(x0)", R1, Y1), {200, 1e-6, {-3, 3}, 42});
  CHECK_FALSE(s.is_linear);
  REQUIRE(s.witness);
  CHECK(std::abs(s.pairing[0]) > 1e-6);
}

TEST_CASE("the named generator r = 1, x1 = x2 = 1") {
  // pair(f, -delta_1 - delta_1 + delta_2) = f(2) - 2 f(1) = sin 2 - 2 sin 1.
  auto f = parse_function("x0 + sin(x0)", R1, Y1);
  auto m = elementary_kernel(R1, 1.0, Point<double>{1.0}, Point<double>{1.0});
  CHECK(pair(f, m)[0] == doctest::Approx(std::sin(2.0) - 2 * std::sin(1.0)).epsilon(1e-14));
  CHECK(pair(f, m)[0] == doctest::Approx(-0.7737).epsilon(1e-4));
}

TEST_CASE("abs witness on the symmetric pair") {
  auto f = parse_function("abs(x0)", R1, Y1);
  auto m = elementary_kernel(R1, Q(1), Point<Q>{1}, Point<Q>{-1});
  CHECK(m == mol({{-1, -1}, {-1, 1}}));
  CHECK(pair(f, m) == Point<Q>{-2});
}

TEST_CASE("linear maps pass in both modes, with a reproducible seed") {
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    Space X(1 + static_cast<std::size_t>(i % 3), NormKind::L2);
    Space Y(1 + static_cast<std::size_t>(i % 2), NormKind::LInf);
    auto f = linear_function(X, Y, random_matrix(rng, Y.dim, X.dim));
    CHECK(linearity_test<double>(f).is_linear);
    CHECK(linearity_test<Q>(f, {50, 0, {}, 9}).is_linear);
  }
  auto g = parse_function("max(x0, 2*x0)", R1, Y1);
  auto r1 = linearity_test<double>(g, {200, 1e-8, {}, 77});
  auto r2 = linearity_test<double>(g, {200, 1e-8, {}, 77});
  REQUIRE(r1.witness);
  CHECK(*r1.witness == *r2.witness);
}

TEST_CASE("bilinearity and the linear factorization") {
  Rng rng(19);
  for (int i = 0; i < 40; ++i) {
    Space s(1 + static_cast<std::size_t>(i % 3), NormKind::L1);
    auto f = parse_function(random_piecewise_affine(rng, s.dim), s, Y1);
    auto g = parse_function(random_piecewise_affine(rng, s.dim), s, Y1);
    auto m1 = random_molecule(rng, s, 5);
    auto m2 = random_molecule(rng, s, 5);
    Q k = rng.rational(-2, 2, 4);
    CHECK(pair(linear_combination(k, f, g), m1) == Point<Q>{k * pair(f, m1)[0] + pair(g, m1)[0]});
    CHECK(pair(f, k * m1 + m2) == Point<Q>{k * pair(f, m1)[0] + pair(f, m2)[0]});

    auto t = random_matrix(rng, 2, s.dim);
    auto lin = linear_function(s, Space(2, NormKind::LInf), t);
    CHECK(pair(lin, m1) == t.apply(beta(m1)));
  }
}

TEST_CASE("non-degeneracy") {
  Rng rng(29);
  for (int i = 0; i < 40; ++i) {
    Space s(1 + static_cast<std::size_t>(i % 3), NormKind::L2);
    auto m = random_molecule(rng, s, 6);
    auto h = hat_potential(m);
    CHECK(h.exact_capable());
    CHECK(is_anchored(h));
    CHECK(pair(h, m)[0] != 0);
    auto f = parse_function(random_piecewise_affine(rng, s.dim), s, Y1);
    for (const auto& t : m.terms) CHECK(pair(f, Molecule<Q>::delta(s, t.point)) == f(t.point));
  }
  CHECK_THROWS_AS(hat_potential(Molecule<Q>(R1)), DegenerateSample);
}
