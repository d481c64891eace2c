#include <doctest.h>

#include <cmath>
#include <numbers>

#include "depthlab/errors.hpp"
#include "depthlab/jensen.hpp"
#include "depthlab/order.hpp"
#include "support/generators.hpp"

using namespace depthlab;
using depthlab::testing::Gen;

namespace {

// Lower median of the values by direct search: the smallest value v with
// P(f <= v) >= 1/2 on the exact grid.
double lower_median(const std::vector<double>& vals, const WeightedSample& s) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : vals) {
    Mass below;
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (vals[i] <= v) below += s.mass(i);
    if (below >= Mass::threshold(0.5)) best = std::min(best, v);
  }
  return best;
}

// max_i h_i(y_i) in cone coordinates with every h_i quasi-convex, so each
// sublevel set is a product of intervals.
CFunctionSpec random_interval_function(Gen& g, const ConeOrder& order) {
  const std::size_t d = order.dim();
  std::vector<int> kind(d);
  std::vector<double> a(d), b(d), scale(d);
  for (std::size_t i = 0; i < d; ++i) {
    kind[i] = g.integer(0, 4);
    a[i] = g.uniform(-3, 3);
    b[i] = g.uniform(-3, 3);
    scale[i] = g.uniform(0.2, 2.0);
  }
  auto f = [order, kind, a, b, scale](std::span<const double> x) {
    const Vector y = order.to_cone(x);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i) {
      double h = 0.0;
      switch (kind[i]) {
        case 0: h = std::abs(y[i] - a[i]) - std::abs(y[i] - b[i]); break;
        case 1: h = std::abs(y[i] - a[i]); break;
        case 2: h = y[i] - a[i]; break;
        case 3: h = a[i] - y[i]; break;
        default: h = (y[i] - a[i]) * (y[i] - a[i]);
      }
      m = std::max(m, scale[i] * h);
    }
    return m;
  };
  return {f, IntervalSublevels{order}, "random-gauge"};
}

// (x - c)^T A (x - c) + l.x with A positive semidefinite, or exp of an
// affine map, or a max of affine maps.
CFunctionSpec random_convex_function(Gen& g) {
  const int kind = g.integer(0, 2);
  const double b00 = g.uniform(-2, 2), b01 = g.uniform(-2, 2), b10 = g.uniform(-2, 2),
               b11 = g.uniform(-2, 2);
  const double c0 = g.uniform(-3, 3), c1 = g.uniform(-3, 3);
  const double l0 = g.uniform(-1, 1), l1 = g.uniform(-1, 1);
  std::vector<std::array<double, 3>> planes(static_cast<std::size_t>(g.integer(1, 5)));
  for (auto& p : planes) p = {g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
  auto f = [=](std::span<const double> x) {
    const double u = x[0] - c0, v = x[1] - c1;
    if (kind == 0) {
      const double r0 = b00 * u + b01 * v, r1 = b10 * u + b11 * v;
      return r0 * r0 + r1 * r1 + l0 * x[0] + l1 * x[1];
    }
    if (kind == 1) return std::exp(l0 * u + l1 * v);
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : planes) m = std::max(m, p[0] * x[0] + p[1] * x[1] + p[2]);
    return m;
  };
  return {f, ConvexSublevels{}, "random-convex"};
}

ConeOrder random_order(Gen& g) {
  return g.coin() ? ConeOrder::identity(2) : ConeOrder::rotation(g.uniform(-1.5, 1.5));
}

}  // namespace

TEST_CASE("c-function checks") {
  const auto id = ConeOrder::identity(2);
  const OrderInterval probe(id, {-3, -3}, {3, 3});
  const std::vector<double> ab{-1, -1, 1, 1};
  CHECK(check_cfunction(builtin_cfunction("gauge-box", ab, id), probe));

  auto sq = builtin_cfunction("sqnorm", {}, id);
  CHECK(check_cfunction(sq, probe));
  sq.family = IntervalSublevels{id};
  const auto bad = check_cfunction(sq, probe);
  REQUIRE_FALSE(bad);
  // the witness sits in the hull of a disc but outside the disc
  CHECK(sq(bad.witness) > bad.level);
  CHECK(bad.value == sq(bad.witness));
  const std::vector<double> four{4.0};
  CHECK_FALSE(check_cfunction(sq, probe, {}, four));

  // a tilted projection is not an interval function of the identity order
  const auto tilt = ConeOrder::rotation(0.4);
  auto p = builtin_cfunction("proj-i", std::vector<double>{0}, tilt);
  CHECK(check_cfunction(p, OrderInterval(tilt, {-2, -2}, {2, 2})));
  p.family = IntervalSublevels{id};
  CHECK_FALSE(check_cfunction(p, probe));

  // a non-quasi-convex function
  const CFunctionSpec wave{[](std::span<const double> x) { return std::sin(3 * x[0]); },
                           ConvexSublevels{}, "wave"};
  CHECK_FALSE(check_cfunction(wave, probe));
  CHECK_THROWS_AS(check_cfunction(sq, OrderInterval(id, {0, 1}, {1, 0})), ParameterError);
}

TEST_CASE("depth complement has convex sublevel sets") {
  Gen g(80);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = g.planar(static_cast<std::size_t>(g.integer(2, 12)));
    const CFunctionSpec f{[&s](std::span<const double> x) {
                            return 1.0 - halfspace_depth_2d(x, s).value();
                          },
                          ConvexSublevels{}, "1-D"};
    ProbeGrid grid;
    grid.triples = 300;
    grid.seed = static_cast<std::uint64_t>(trial);
    CHECK(check_cfunction(f, OrderInterval(ConeOrder::identity(2), {-4, -4}, {4, 4}), grid));
  }
}

TEST_CASE("pushforward medians") {
  const auto id = ConeOrder::identity(2);
  const auto e = depthlab::testing::triangle();
  const auto y = pushforward_medians(builtin_cfunction("proj-i", std::vector<double>{1}, id), e);
  CHECK(y.q_lo == 0.0);
  CHECK(y.q_hi == 0.0);
  const CFunctionSpec seven{[](std::span<const double>) { return 7.0; }, ConvexSublevels{}, "7"};
  const auto c = pushforward_medians(seven, e);
  CHECK(c.q_lo == 7.0);
  CHECK(c.q_hi == 7.0);
  const WeightedSample two(2, {0, 0, 1, 1});
  const auto t = pushforward_medians(builtin_cfunction("proj-i", std::vector<double>{0}, id), two);
  CHECK(t.q_lo == 0.0);
  CHECK(t.q_hi == 1.0);
}

TEST_CASE("median jensen examples") {
  const auto id = ConeOrder::identity(2);
  const auto e = depthlab::testing::triangle();
  const std::vector<double> ab{-1, -1, 1, 1};
  const auto r = jensen_median(id, builtin_cfunction("gauge-box", ab, id), e);
  CHECK(r.holds);
  CHECK(r.m_star == Vector{0, 0});

  Gen g(81);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = g.planar(static_cast<std::size_t>(g.integer(1, 15)));
    const auto proj = builtin_cfunction("proj-i", std::vector<double>{0}, id);
    const auto m = jensen_median(id, proj, s);
    CHECK(m.holds);
    CHECK(m.f_m == m.medians.q_lo);
  }

  const WeightedSample atom(2, {2.5, -1});
  const auto a = jensen_median(id, builtin_cfunction("gauge-box", ab, id), atom);
  CHECK(a.m_star == Vector{2.5, -1});
  CHECK(a.f_m == a.medians.q_lo);
  CHECK(a.medians.q_lo == a.medians.q_hi);
  CHECK(a.holds);

  CHECK_THROWS_AS(jensen_median(id, builtin_cfunction("sqnorm", {}, id), e), PreconditionError);
  auto fake = builtin_cfunction("sqnorm", {}, id);
  fake.family = IntervalSublevels{id};
  CHECK_THROWS_AS(jensen_median(id, fake, e), PreconditionError);
  CHECK_THROWS_AS(
      jensen_median(ConeOrder::rotation(0.3), builtin_cfunction("gauge-box", ab, id), e),
      PreconditionError);
}

TEST_CASE("median jensen inequality on random c-functions") {
  Gen g(82);
  for (int trial = 0; trial < 200; ++trial) {
    const auto order = random_order(g);
    const auto s = g.planar(static_cast<std::size_t>(g.integer(1, 20)));
    const auto f = random_interval_function(g, order);
    const auto r = jensen_median(order, f, s, 32);
    std::vector<double> vals(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) vals[i] = f(s.point(i));
    CHECK(r.holds);
    CHECK(r.f_m <= lower_median(vals, s) + 1e-12);
    const Vector c = order.to_cone(r.m_star);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(c[k] >= r.median_box.lower[k] - 1e-12);
      CHECK(c[k] <= r.median_box.upper[k] + 1e-12);
    }
  }
  // three dimensions, identity order
  for (int trial = 0; trial < 20; ++trial) {
    const auto order = ConeOrder::identity(3);
    const auto s = g.sample(static_cast<std::size_t>(g.integer(1, 12)), 3, g.coin(), g.coin());
    CHECK(jensen_median(order, random_interval_function(g, order), s, 16).holds);
  }
}

TEST_CASE("general jensen examples") {
  // A(0,1), B(-1,0), C(1,0), distance to the line AB, positive on the side of C
  const std::vector<double> abc{0, 1, -1, 0, 1, 0};
  const auto id = ConeOrder::identity(2);
  const auto f = builtin_cfunction("exp-line", abc, id);
  const auto r = jensen_general(HalfspaceAll{}, f, depthlab::testing::triangle());
  CHECK(r.alpha_max == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.worst_gap == 0.0);
  CHECK(r.holds);
  CHECK(std::abs(r.f_max - std::exp(std::numbers::sqrt2)) < 1e-9);
  CHECK(std::abs(r.q - std::exp(std::numbers::sqrt2)) < 1e-9);
  CHECK(r.argmax == Vector{1, 0});
  CHECK(builtin_cfunction("paper-exp-line", abc, id)(std::vector<double>{1, 0}) == r.f_max);

  const CFunctionSpec seven{[](std::span<const double>) { return 7.0; }, ConvexSublevels{}, "7"};
  Gen g(83);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = g.planar(static_cast<std::size_t>(g.integer(1, 12)));
    CHECK(jensen_general(HalfspaceAll{}, seven, s).worst_gap == 0.0);
  }

  CHECK_THROWS_AS(jensen_general(AxisParallel{id}, f, depthlab::testing::triangle()),
                  PreconditionError);
  CHECK_THROWS_AS(jensen_general(BallComplements{}, f, depthlab::testing::triangle()),
                  PreconditionError);
  const std::vector<double> ab{-1, -1, 1, 1};
  const auto gauge = jensen_general(AxisParallel{id}, builtin_cfunction("gauge-box", ab, id),
                                    depthlab::testing::triangle());
  CHECK(gauge.alpha_max == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(gauge.holds);
}

TEST_CASE("general jensen inequality on random convex functions") {
  Gen g(84);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = g.planar(static_cast<std::size_t>(g.integer(1, 20)));
    const auto r = jensen_general(HalfspaceAll{}, random_convex_function(g), s, 24);
    CHECK(r.holds);
    CHECK(r.evaluated >= r.region.vertices.size());
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto order = random_order(g);
    const auto s = g.planar(static_cast<std::size_t>(g.integer(1, 20)));
    CHECK(jensen_general(AxisParallel{order}, random_interval_function(g, order), s, 24).holds);
  }
}

TEST_CASE("builtin functions") {
  const auto id = ConeOrder::identity(2);
  CHECK_THROWS_AS(builtin_cfunction("nope", {}, id), ParameterError);
  CHECK_THROWS_AS(builtin_cfunction("gauge-box", std::vector<double>{1}, id), ParameterError);
  CHECK_THROWS_AS(builtin_cfunction("proj-i", std::vector<double>{2}, id), ParameterError);
  CHECK_THROWS_AS(builtin_cfunction("exp-line", std::vector<double>{0, 0, 1, 1, 2, 2}, id),
                  DegenerateInput);
  CHECK_THROWS_AS(builtin_cfunction("exp-line", std::vector<double>(6), ConeOrder::identity(3)),
                  DimensionError);
  const auto sq = builtin_cfunction("sqnorm", {}, ConeOrder::identity(3));
  CHECK(sq(std::vector<double>{1, 2, 2}) == 9.0);
}
