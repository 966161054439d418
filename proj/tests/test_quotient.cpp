#include <doctest.h>

#include <algorithm>

#include "lipfree/duality.hpp"
#include "lipfree/errors.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/quotient.hpp"
#include "lipfree/sampling.hpp"

using namespace lipfree;

namespace {

using Q = Rational;
const Space R1(1, NormKind::L2);
const Space Y1(1, NormKind::LInf);

std::vector<Point<Q>> line(std::initializer_list<long> xs) {
  std::vector<Point<Q>> out;
  for (long x : xs) out.push_back({Q(x)});
  return out;
}

// Half the spread of all pairwise slopes, straight from the definition.
Q spread_oracle(const FunctionSpec& f, const std::vector<Point<Q>>& pts) {
  std::vector<Q> slopes;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) continue;
      slopes.push_back((f(pts[i])[0] - f(pts[j])[0]) / (pts[i][0] - pts[j][0]));
    }
  }
  auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  return (*hi - *lo) / 2;
}

}  // namespace

TEST_CASE("dist_to_linear examples") {
  auto a = dist_to_linear(parse_function("abs(x0)", R1, Y1), line({-1, 0, 1}));
  CHECK(a.value == 1);
  CHECK(a.best(0, 0) == 0);

  auto lin = dist_to_linear(parse_function("3/2*x0", R1, Y1), line({-1, 0, 1, 2}));
  CHECK(lin.value == 0);
  CHECK(lin.best(0, 0) == Q(3, 2));

  auto t = table_function(R1, Y1, line({-1, 0, 1}), line({0, 0, 2}));
  auto r = dist_to_linear(t, line({-1, 0, 1}));
  CHECK(r.value == 1);
  CHECK(r.best(0, 0) == 1);
}

TEST_CASE("kernel_ball_sup examples") {
  auto f = parse_function("abs(x0)", R1, Y1);
  auto k = kernel_ball_sup(f, line({-1, 0, 1}));
  CHECK(k.value == 1);
  CHECK(is_kernel(k.witness));
  CHECK(free_norm(k.witness) <= 1);
  CHECK(pair(f, k.witness) == Point<Q>{1});
  Molecule<Q> half(R1, {{Q(1, 2), {Q(-1)}}, {Q(1, 2), {Q(1)}}});
  CHECK(k.witness == half);

  CHECK(kernel_ball_sup(parse_function("-2*x0", R1, Y1), line({-1, 0, 1, 3})).value == 0);
  CHECK(kernel_ball_sup(parse_function("0", R1, Y1), line({-1, 0, 1})).value == 0);
}

TEST_CASE("theta_isometry_check examples") {
  auto r = theta_isometry_check(parse_function("abs(x0)", R1, Y1), line({-1, 0, 1}), Q(0));
  CHECK(r.primal.value == 1);
  CHECK(r.dual.value == 1);
  auto l = theta_isometry_check(parse_function("7*x0", R1, Y1), line({-1, 0, 1}), Q(0));
  CHECK(l.primal.value == 0);
  CHECK(l.dual.value == 0);
  auto m = theta_isometry_check(parse_function("max(x0, 2*x0)", R1, Y1), line({-2, -1, 0, 1, 2}), Q(0));
  CHECK(m.primal.value == Q(1, 2));
  CHECK(m.dual.value == Q(1, 2));
}

TEST_CASE("quotient_oracle_1d examples and errors") {
  CHECK(quotient_oracle_1d(parse_function("abs(x0)", R1, Y1), line({1, -1, 0})) == 1);
  CHECK(quotient_oracle_1d(parse_function("-4*x0", R1, Y1), line({-3, 0, 5})) == 0);
  CHECK(quotient_oracle_1d(parse_function("max(x0, 2*x0)", R1, Y1), line({-2, -1, 0, 1, 2})) == Q(1, 2));
  CHECK_THROWS_AS(quotient_oracle_1d(parse_function("x0", R1, Y1), line({1, 1})), DegenerateSample);
  CHECK_THROWS_AS(quotient_oracle_1d(parse_function("x0 - x1", Space(2, NormKind::L1), Y1),
                                     std::vector<Point<Q>>{{Q(0), Q(1)}, {Q(1), Q(0)}}),
                  NotOneDimensional);
}

TEST_CASE("preconditions") {
  auto f = parse_function("abs(x0)", R1, Y1);
  CHECK_THROWS_AS(dist_to_linear(f, line({1, 2})), DegenerateSample);
  CHECK_THROWS_AS(kernel_ball_sup(f, line({0})), DegenerateSample);
  auto g = parse_function("x0; abs(x0)", R1, Space(2, NormKind::L1));
  CHECK_THROWS_AS(dist_to_linear(g, line({0, 1})), UnsupportedCodomainNorm);
  CHECK_THROWS_AS(kernel_ball_sup(g, line({0, 1})), UnsupportedCodomainNorm);
}

TEST_CASE("both sides agree on random 1-d and 2-d samples") {
  Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    std::size_t dim = 1 + static_cast<std::size_t>(i % 2);
    Space s(dim, i % 4 < 2 ? NormKind::L1 : NormKind::LInf);
    Space y(1 + static_cast<std::size_t>(i % 3 == 0), NormKind::LInf);
    std::string body = random_piecewise_affine(rng, dim);
    if (y.dim == 2) body += "; " + random_piecewise_affine(rng, dim);
    auto f = parse_function(body, s, y);
    std::vector<Point<Q>> sample{zero_point<Q>(dim)};
    auto size = rng.integer(2, 6);
    while (static_cast<std::int64_t>(distinct_points(sample).size()) < size) {
      sample.push_back(random_rational_point(rng, dim, 3, 2));
    }
    auto r = theta_isometry_check(f, sample, Q(0));
    CHECK(r.gap == 0);
    CHECK(r.primal.value <= lip_constant_on_sample(f, sample));
    CHECK(is_kernel(r.dual.witness));
    CHECK(free_norm(r.dual.witness) <= 1);
    // The best linear map attains the distance.
    auto residual = minus_linear(f, r.primal.best);
    CHECK(lip_constant_on_sample(residual, sample) == r.primal.value);
    if (dim == 1 && y.dim == 1) {
      CHECK(quotient_oracle_1d(f, sample) == r.primal.value);
      CHECK(spread_oracle(f, sample) == r.primal.value);
    }
    // Float mode agrees to LP precision.
    std::vector<Point<double>> sd;
    for (const auto& p : sample) sd.push_back(to_double_point(p));
    auto rf = theta_isometry_check(f, sd, 1e-7);
    CHECK(rf.primal.value == doctest::Approx(r.primal.value.get_d()).epsilon(1e-9));
  }
}

TEST_CASE("sample monotonicity") {
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    Space s(1 + static_cast<std::size_t>(i % 2), NormKind::L1);
    auto f = parse_function(random_piecewise_affine(rng, s.dim), s, Y1);
    std::vector<Point<Q>> sample{zero_point<Q>(s.dim), random_rational_point(rng, s.dim, 3, 2)};
    if (is_zero(sample[1])) continue;
    Q prev_d = dist_to_linear(f, sample).value;
    Q prev_k = kernel_ball_sup(f, sample).value;
    for (int k = 0; k < 4; ++k) {
      sample.push_back(random_rational_point(rng, s.dim, 3, 2));
      Q d = dist_to_linear(f, sample).value;
      Q kb = kernel_ball_sup(f, sample).value;
      CHECK(prev_d <= d);
      CHECK(prev_k <= kb);
      prev_d = d;
      prev_k = kb;
    }
  }
}

TEST_CASE("a growing bump grows the distance continuously") {
  // f_t = x + t |x| on a symmetric sample: slopes 1 - t and 1 + t, distance t.
  auto sample = line({-2, -1, 0, 1, 2});
  Q prev(-1);
  for (Q t : {Q(0), Q(1, 4), Q(1, 2), Q(1)}) {
    auto f = parse_function("x0 + " + format_rational(t) + "*abs(x0)", R1, Y1);
    auto r = theta_isometry_check(f, sample, Q(0));
    CHECK(r.primal.value == t);
    CHECK(r.primal.value > prev);
    prev = r.primal.value;
  }
}
