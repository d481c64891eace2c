// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Randomized criteria use fixed seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "depthlab/depth.hpp"
#include "depthlab/errors.hpp"
#include "depthlab/jensen.hpp"
#include "depthlab/order.hpp"
#include "depthlab/polygon.hpp"
#include "depthlab/regions.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace depthlab;
using depthlab::testing::Gen;

namespace {

constexpr Mass::Ticks kT = Mass::kTotal;

// Collects failed expectations; the first few are reported.
class Report {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { extra_ = s; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!extra_.empty()) os << ", " << extra_;
    if (failures_) os << ", " << failures_ << " failed: " << notes_;
    return os.str();
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string notes_, extra_;
};

std::string str(std::span<const double> x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  return os.str() + ')';
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool near(Point2 a, Point2 b, double tol) { return std::hypot(a.x - b.x, a.y - b.y) <= tol; }

// Same vertex sets up to `tol`.
bool same_vertices(const std::vector<Point2>& a, const std::vector<Point2>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Point2& p : a) {
    bool found = false;
    for (const Point2& q : b) found = found || near(p, q, tol);
    if (!found) return false;
  }
  return true;
}

std::size_t pick_n(Gen& g, int lo, int hi) { return static_cast<std::size_t>(g.integer(lo, hi)); }

// ---- 1 --------------------------------------------------------------------
void triangle_reproduction(Report& r) {
  const auto s = depthlab::testing::triangle();
  for (const Vector& x : {Vector{0, 0}, Vector{0, 0.5}, Vector{0, 1}})
    r.expect(halfspace_depth_2d(x, s).mass.ticks() == kT / 3, "depth 1/3 at " + str(x));
  for (const Vector& x : {Vector{2, 2}, Vector{0, -0.1}})
    r.expect(halfspace_depth_2d(x, s).mass == Mass::zero(), "depth 0 at " + str(x));
  const auto c = center(s, HalfspaceAll{});
  r.expect(c.level.ticks() == kT / 3, "alpha_m = 1/3");
  r.expect(same_vertices(c.region.vertices, {{0, 1}, {-1, 0}, {1, 0}}, 1e-12), "center triangle");
  const auto a = center(s, AxisParallel{ConeOrder::identity(2)});
  r.expect(a.level.ticks() == 2 * (kT / 3), "axis alpha_m = 2/3");
  r.expect(a.region.kind == RegionPolytope::Kind::Box && a.region.box->lower == Vector{0, 0} &&
               a.region.box->upper == Vector{0, 0},
           "axis center {(0,0)}");
}

// ---- 2 --------------------------------------------------------------------
void simplex_tightness(Report& r) {
  const auto tri = depthlab::testing::triangle();
  const auto tet = depthlab::testing::regular_simplex_3d();
  r.expect(bound_check(tri).level.ticks() == kT / 3, "max depth 1/3 in the plane");
  r.expect(bound_check(tet).level.ticks() == kT / 4, "max depth 1/4 in space");
  for (const auto* s : {&tri, &tet}) {
    const auto expect_ticks = kT / static_cast<Mass::Ticks>(s->dim() + 1);
    for (std::size_t i = 0; i < s->size(); ++i)
      r.expect(halfspace_depth_exact(s->point(i), *s).mass.ticks() == expect_ticks,
               "vertex depth at " + str(s->point(i)));
  }
  for (const Vector& x : {Vector{2, 2}, Vector{0, -0.1}, Vector{-1.5, 0}})
    r.expect(halfspace_depth_exact(x, tri).mass == Mass::zero(), "exterior " + str(x));
  for (const Vector& x : {Vector{2, 2, 2}, Vector{0, 0, 3.5}, Vector{1, 1, 1.01}})
    r.expect(halfspace_depth_exact(x, tet).mass == Mass::zero(), "exterior " + str(x));
}

// ---- 3 --------------------------------------------------------------------
void bound_suite(Report& r) {
  Gen g(3);
  Mass worst = Mass::one();
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = g.sample(pick_n(g, 3, 40), 2, g.coin(0.3), true);
    const auto b = bound_check(s);
    worst = std::min(worst, b.level);
    r.expect(b.holds && b.level.ticks() * 3 >= kT, "trial " + std::to_string(trial));
  }
  r.note("min alpha_m " + num(worst.value()));
}

// ---- 4 --------------------------------------------------------------------
ConeOrder random_order(Gen& g) {
  switch (g.integer(0, 2)) {
    case 0: return ConeOrder::identity(2);
    case 1: return ConeOrder::rotation(g.uniform(-1.5, 1.5));
    default: {
      Eigen::MatrixXd m(2, 2);
      do {
        m << g.integer(-2, 2), g.integer(-2, 2), g.integer(-2, 2), g.integer(-2, 2);
      } while (m.determinant() == 0.0);
      return ConeOrder(m);
    }
  }
}

void median_equivalence(Report& r) {
  Gen g(4);
  const Mass half{kT / 2};
  const double inf = std::numeric_limits<double>::infinity();
  std::size_t intervals = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto order = random_order(g);
    const auto s = g.planar(pick_n(g, 1, 30));
    const OrderInterval med = median_set(order, s);
    const std::string tag = "trial " + std::to_string(trial);
    r.expect(med == median_set_oracle(order, s), tag + " oracle");
    const auto box = region_axis(order, s, 0.5);
    r.expect(box.box && *box.box == med, tag + " region at 1/2");

    std::vector<std::vector<double>> proj(2);
    for (std::size_t k = 0; k < 2; ++k) proj[k] = cone_projection(order, s, k);
    auto endpoint = [&](std::size_t k, double infinite) {
      if (g.coin(0.2)) return infinite;
      if (g.coin(0.7)) return proj[k][pick_n(g, 0, static_cast<int>(s.size()) - 1)];
      return g.uniform(-8, 8);
    };
    for (int attempt = 0; attempt < 60; ++attempt) {
      Vector lo(2), hi(2);
      for (std::size_t k = 0; k < 2; ++k) {
        lo[k] = endpoint(k, -inf);
        hi[k] = endpoint(k, inf);
        if (lo[k] > hi[k]) std::swap(lo[k], hi[k]);
      }
      const OrderInterval j(order, lo, hi);
      if (!(prob_interval(s, j) > half)) continue;
      ++intervals;
      r.expect(j.includes(med), tag + " heavy interval misses the median");
    }
  }
  r.note(std::to_string(intervals) + " heavy intervals");
}

// ---- 5 --------------------------------------------------------------------
void oracle_agreement(Report& r) {
  Gen g(5);
  for (int trial = 0; trial < 500; ++trial) {
    const bool dup = trial % 5 == 0;
    WeightedSample s = g.planar(pick_n(g, 1, dup ? 20 : 30));
    if (dup) {
      // duplicate some atoms explicitly
      std::vector<double> c(s.coords().begin(), s.coords().end());
      const std::size_t n = s.size();
      for (std::size_t k = 0; k < n / 2; ++k) {
        const std::size_t i = pick_n(g, 0, static_cast<int>(n) - 1);
        c.push_back(c[2 * i]);
        c.push_back(c[2 * i + 1]);
      }
      s = WeightedSample(2, c, g.weights(c.size() / 2, g.coin()));
    }
    const auto x = g.query(s);
    const Mass sweep = halfspace_depth_2d(x, s).mass;
    const Mass brute = depth_oracle(x, s).mass;
    const Mass exact = halfspace_depth_exact(x, s).mass;
    r.expect(sweep == brute && brute == exact, "trial " + std::to_string(trial) + " at " + str(x));
  }
}

// ---- 6 --------------------------------------------------------------------
// min over cone axes of the masses of the two halfspaces bounded by the
// hyperplane through x spanned by the other generators
Mass tangent_halfspace_depth(std::span<const double> x, const WeightedSample& s,
                             const ConeOrder& order) {
  Mass best = Mass::one();
  const auto& t = order.cone_map();
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    Vector u(static_cast<std::size_t>(t.cols()));
    for (Eigen::Index j = 0; j < t.cols(); ++j) u[static_cast<std::size_t>(j)] = t(k, j);
    const double c = order.to_cone(x)[static_cast<std::size_t>(k)];
    Mass below, above;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double v = order.to_cone(s.point(i))[static_cast<std::size_t>(k)];
      if (v <= c) below += s.mass(i);
      if (v >= c) above += s.mass(i);
    }
    best = std::min({best, below, above});
  }
  return best;
}

void equivalences(Report& r) {
  Gen g(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = g.planar(pick_n(g, 1, 25));
    const auto x = g.query(s);
    r.expect(halfspace_depth_open_2d(x, s) == halfspace_depth_2d(x, s).mass,
             "open vs closed at " + str(x));
  }
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = g.sample(pick_n(g, 1, 15), 2, g.coin(), g.coin());
    const auto x = g.query(s);
    const double cap = 1e4 * std::max(s.diameter(), 1.0);
    const double gap =
        std::abs(ball_depth(x, s, cap).value() - halfspace_depth_2d(x, s).value());
    worst = std::max(worst, gap);
    r.expect(gap <= 1e-6, "ball depth at " + str(x));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto order = random_order(g);
    const auto s = g.planar(pick_n(g, 1, 25));
    const auto x = g.query(s);
    const Mass ax = axis_depth(x, s, order).mass;
    r.expect(ax == tangent_halfspace_depth(x, s, order), "tangent formula at " + str(x));
    r.expect(ax >= halfspace_depth_2d(x, s).mass, "axis below halfspace at " + str(x));
  }
  r.note("worst ball gap " + num(worst));
}

// ---- 7 --------------------------------------------------------------------
void affine_invariance(Report& r) {
  Gen g(7);
  for (int trial = 0; trial < 100; ++trial) {
    const bool lattice = trial % 2 == 0;
    const auto s = g.sample(pick_n(g, 1, 15), 2, lattice, g.coin());
    Eigen::Matrix2d a;
    if (lattice) {
      do {
        a << g.integer(-3, 3), g.integer(-3, 3), g.integer(-3, 3), g.integer(-3, 3);
      } while (a.determinant() == 0.0 ||
               a.jacobiSvd().singularValues()(0) > 100 * a.jacobiSvd().singularValues()(1));
    } else {
      const double t1 = g.uniform(0, 6.3), t2 = g.uniform(0, 6.3);
      const Eigen::Matrix2d r1 = Eigen::Rotation2Dd(t1).toRotationMatrix();
      const Eigen::Matrix2d r2 = Eigen::Rotation2Dd(t2).toRotationMatrix();
      const double s1 = g.uniform(0.2, 5), s2 = s1 / g.uniform(1, 100);
      a = r1 * Eigen::Vector2d(s1, g.coin() ? s2 : -s2).asDiagonal() * r2;
    }
    const Eigen::Vector2d b(lattice ? g.integer(-4, 4) : g.uniform(-5, 5),
                            lattice ? g.integer(-4, 4) : g.uniform(-5, 5));
    auto map = [&](std::span<const double> p) {
      const Eigen::Vector2d q = a * Eigen::Vector2d(p[0], p[1]) + b;
      return Vector{q(0), q(1)};
    };
    std::vector<double> coords;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Vector q = map(s.point(i));
      coords.insert(coords.end(), q.begin(), q.end());
    }
    const auto t = s.with_coords(coords);
    const std::string tag = "trial " + std::to_string(trial);
    for (int k = 0; k < 10; ++k) {
      const auto x = lattice ? g.query(s) : Vector{g.uniform(-5, 5), g.uniform(-5, 5)};
      r.expect(halfspace_depth_2d(x, s).mass == halfspace_depth_2d(map(x), t).mass,
               tag + " depth at " + str(x));
    }
    const double alpha = g.coin() ? center(s, HalfspaceAll{}).alpha_max
                                  : static_cast<double>(g.integer(1, 6)) / 12.0;
    const auto before = region_halfspace_2d(s, alpha);
    const auto after = region_halfspace_2d(t, alpha);
    std::vector<Point2> mapped;
    for (const Point2& v : before.vertices) {
      const Vector q = map(std::vector<double>{v.x, v.y});
      mapped.push_back({q[0], q[1]});
    }
    double scale = 1.0;
    for (double c : coords) scale = std::max(scale, std::abs(c));
    r.expect(before.kind == after.kind && same_vertices(mapped, after.vertices, 1e-9 * scale),
             tag + " region");
  }
}

// ---- 8 --------------------------------------------------------------------
void rotated_containment(Report& r) {
  Gen g(8);
  std::size_t compared = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto s = g.planar(pick_n(g, 1, 15));
    std::vector<double> angles(pick_n(g, 1, 8));
    for (double& a : angles) a = g.uniform(-std::numbers::pi, std::numbers::pi);
    const double alpha = g.coin() ? center(s, HalfspaceAll{}).alpha_max
                                  : static_cast<double>(g.integer(1, 8)) / 16.0;
    const auto inner = region_halfspace_2d(s, alpha);
    if (inner.empty()) continue;
    ++compared;
    const auto outer = rotated_axis_intersection(s, angles, alpha);
    bool inside = !outer.empty();
    for (const Point2& v : inner.vertices) {
      const double q[2] = {v.x, v.y};
      inside = inside && outer.contains(q, 1e-9);
    }
    r.expect(inside, "trial " + std::to_string(trial));
  }
  r.expect(compared >= 50, "at least 50 nonempty regions compared");
  r.note(std::to_string(compared) + " regions");
}

// ---- 9 --------------------------------------------------------------------
CFunctionSpec random_gauge(Gen& g, const ConeOrder& order) {
  std::vector<double> ab(4);
  for (double& v : ab) v = g.uniform(-3, 3);
  const double w0 = g.uniform(0.2, 2), w1 = g.uniform(0.2, 2);
  const auto base = builtin_cfunction("gauge-box", ab, order);
  // positive scaling of each coordinate keeps the sublevel sets intervals
  auto f = [order, ab, w0, w1](std::span<const double> x) {
    const Vector y = order.to_cone(x);
    return std::max(w0 * (std::abs(y[0] - ab[0]) - std::abs(y[0] - ab[2])),
                    w1 * (std::abs(y[1] - ab[1]) - std::abs(y[1] - ab[3])));
  };
  return {g.coin() ? base.evaluator : Evaluator(f), IntervalSublevels{order}, "gauge"};
}

CFunctionSpec random_convex(Gen& g) {
  Eigen::Matrix2d b;
  b << g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2);
  const Eigen::Vector2d c(g.uniform(-3, 3), g.uniform(-3, 3));
  const Eigen::Vector2d l(g.uniform(-1, 1), g.uniform(-1, 1));
  auto f = [b, c, l](std::span<const double> x) {
    const Eigen::Vector2d v(x[0], x[1]);
    return (b * (v - c)).squaredNorm() + l.dot(v);
  };
  return {f, ConvexSublevels{}, "quadratic"};
}

void jensen_suite(Report& r) {
  Gen g(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto order = random_order(g);
    const auto s = g.planar(pick_n(g, 1, 20));
    r.expect(jensen_median(order, random_gauge(g, order), s, 32).holds,
             "median trial " + std::to_string(trial));
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = g.planar(pick_n(g, 1, 20));
    const auto res = jensen_general(HalfspaceAll{}, random_convex(g), s, 24);
    worst = std::max(worst, res.worst_gap);
    r.expect(res.holds, "convex trial " + std::to_string(trial));
  }
  const std::vector<double> abc{0, 1, -1, 0, 1, 0};
  const auto f = builtin_cfunction("paper-exp-line", abc, ConeOrder::identity(2));
  const auto ex = jensen_general(HalfspaceAll{}, f, depthlab::testing::triangle());
  const double target = std::exp(std::numbers::sqrt2);
  r.expect(ex.worst_gap == 0.0, "exp-line on the triangle: worst_gap = 0");
  r.expect(std::abs(f(std::vector<double>{1, 0}) - target) <= 1e-9, "f(C) = e^sqrt2");
  r.expect(std::abs(ex.f_max - target) <= 1e-9 && std::abs(ex.q - target) <= 1e-9,
           "max over the center and the quantile equal f(C)");
  r.note("largest convex gap " + num(worst));
}

// ---- 10 -------------------------------------------------------------------
void negative_control(Report& r) {
  const auto s = depthlab::testing::six_atoms();
  for (std::size_t i = 0; i < s.size(); ++i)
    r.expect(depthlab::testing::wedge_depth(s.point(i), s).ticks() == kT / 6,
             "wedge depth 1/6 at " + str(s.point(i)));
  Gen g(10);
  for (int k = 0; k < 200; ++k) {
    const Vector x{g.uniform(-2.5, 2.5), g.uniform(-1.5, 1.5)};
    r.expect(depthlab::testing::wedge_depth(x, s) == Mass::zero(), "wedge depth 0 at " + str(x));
  }
  const Vector origin{0, 0};
  r.expect(halfspace_depth_2d(origin, s).mass.ticks() == kT / 2, "halfspace depth 1/2 at 0");
  const auto c = center(s, HalfspaceAll{});
  r.expect(c.level.ticks() == kT / 2 && c.region.vertices.size() == 1 &&
               c.region.vertices[0].x == 0.0 && c.region.vertices[0].y == 0.0,
           "halfspace center {(0,0)}");
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: none
  std::function<void(Report&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "three-point triangle reproduction", 1.0, triangle_reproduction},
      {2, "simplex tightness", 5.0, simplex_tightness},
      {3, "1/(d+1) bound, 200 random planar samples", 60.0, bound_suite},
      {4, "median set equivalences, 200 trials", 0.0, median_equivalence},
      {5, "depth oracle agreement, 500 pairs", 0.0, oracle_agreement},
      {6, "open/closed, ball and axis equivalences", 0.0, equivalences},
      {7, "affine invariance, 100 trials", 0.0, affine_invariance},
      {8, "rotated-order containment", 0.0, rotated_containment},
      {9, "Jensen inequalities", 0.0, jensen_suite},
      {10, "non-convex wedge family negative control", 0.0, negative_control},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(rep);
    } catch (const std::exception& e) {
      rep.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0) rep.expect(secs < c.limit_s, "over the time limit");
    if (!rep.ok()) ++failed;
    std::printf("%s %2d  %-44s %7.2f s  %s\n", rep.ok() ? "PASS" : "FAIL", c.id, c.name, secs,
                rep.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
