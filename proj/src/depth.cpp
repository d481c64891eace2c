#include "depthlab/depth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {

constexpr std::size_t kExactMaxPoints = 200;
constexpr std::size_t kOracleMaxPoints = 30;
constexpr std::size_t kBallPairMaxPoints = 200;
constexpr std::size_t kBallTripleMaxPoints = 40;

void check_point(std::span<const double> x, const WeightedSample& sample) {
  if (x.size() != sample.dim()) throw DimensionError("query point dimension differs from sample");
  for (double v : x)
    if (!std::isfinite(v)) throw DegenerateInput("query point must be finite");
}

struct Split {
  Mass at_center;
  std::vector<std::size_t> moving;  // indices with p_i != x
};

Split split_at_center(const CenteredSet& cs, const WeightedSample& sample) {
  Split s;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs.is_zero(i))
      s.at_center += sample.mass(i);
    else
      s.moving.push_back(i);
  }
  return s;
}

// 0 for angles in [0, pi), 1 for [pi, 2 pi), in the (a0, a1) coordinate plane
int half_of(const CenteredSet& cs, std::size_t i, std::size_t a0, std::size_t a1) {
  const int sy = cs.component_sign(i, a1);
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return cs.component_sign(i, a0) > 0 ? 0 : 1;
}

// Minimum over closed halfplanes through the origin of the mass of the given
// nonzero vectors, by an angular sweep.
Mass sweep_min(const CenteredSet& cs, const WeightedSample& sample,
               std::vector<std::size_t> idx, std::size_t a0 = 0, std::size_t a1 = 1) {
  if (idx.empty()) return Mass::zero();
  std::vector<int> half(cs.size(), 0);
  for (std::size_t i : idx) half[i] = half_of(cs, i, a0, a1);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (half[a] != half[b]) return half[a] < half[b];
    return cs.cross2(a, b, a0, a1) > 0;
  });

  std::vector<std::size_t> rep;
  std::vector<Mass> group;
  for (std::size_t i : idx) {
    if (!rep.empty() && half[rep.back()] == half[i] && cs.cross2(rep.back(), i, a0, a1) == 0) {
      group.back() += sample.mass(i);
    } else {
      rep.push_back(i);
      group.push_back(sample.mass(i));
    }
  }

  const std::size_t m = rep.size();
  std::vector<Mass> prefix(2 * m + 1);
  for (std::size_t k = 0; k < 2 * m; ++k) prefix[k + 1] = prefix[k] + group[k % m];
  const Mass moving = prefix[m];

  // R(k): mass at angles in (phi_k, phi_k + pi]
  auto within = [&](std::size_t k, std::size_t j) {
    return cs.cross2(rep[k], rep[j], a0, a1) >= 0;
  };
  Mass best = moving;
  std::size_t end = 0;
  for (std::size_t k = 0; k < m; ++k) {
    end = std::max(end, k);
    while (end + 1 < k + m && within(k, (end + 1) % m)) ++end;
    const Mass r = prefix[end + 1] - prefix[k + 1];
    best = std::min({best, r, moving - r});
  }
  return best;
}

// Planar minimum by enumerating critical lines: for each line through the
// origin and a vector, the strict side plus the lighter of the two rays.
Mass critical_line_min(const CenteredSet& cs, const WeightedSample& sample,
                       std::span<const std::size_t> idx, std::size_t a0, std::size_t a1) {
  if (idx.empty()) return Mass::zero();
  Mass best = Mass::one();
  for (std::size_t i : idx) {
    Mass left, right, forward, backward;
    for (std::size_t j : idx) {
      const int c = cs.cross2(i, j, a0, a1);
      if (c > 0)
        left += sample.mass(j);
      else if (c < 0)
        right += sample.mass(j);
      else if (cs.dot(i, j) > 0)
        forward += sample.mass(j);
      else
        backward += sample.mass(j);
    }
    const Mass ray = std::min(forward, backward);
    best = std::min({best, left + ray, right + ray});
  }
  return best;
}

Mass exact_enumeration(const CenteredSet& cs, const WeightedSample& sample) {
  const Split s = split_at_center(cs, sample);
  if (s.moving.empty()) return s.at_center;
  const std::size_t d = cs.dim();

  if (d == 1) {
    Mass pos, neg;
    for (std::size_t i : s.moving) (cs.component_sign(i, 0) > 0 ? pos : neg) += sample.mass(i);
    return s.at_center + std::min(pos, neg);
  }
  if (d == 2) return s.at_center + critical_line_min(cs, sample, s.moving, 0, 1);

  // d == 3: every vertex of the arrangement is the normal of a plane spanned
  // by two non-parallel vectors; the plane's own points are resolved in 2D.
  Mass best = Mass::one();
  bool spanning = false;
  std::vector<std::size_t> plane;
  const auto& m = s.moving;
  for (std::size_t ii = 0; ii < m.size(); ++ii) {
    for (std::size_t jj = ii + 1; jj < m.size(); ++jj) {
      const std::size_t i = m[ii], j = m[jj];
      // drop an axis along which the plane projects bijectively
      int drop = -1;
      for (int k = 2; k >= 0 && drop < 0; --k) {
        const std::size_t a0 = k == 0 ? 1 : 0;
        const std::size_t a1 = k == 2 ? 1 : 2;
        if (cs.cross2(i, j, a0, a1) != 0) drop = k;
      }
      if (drop < 0) continue;
      spanning = true;
      Mass pos, neg;
      plane.clear();
      for (std::size_t l : m) {
        const int sg = cs.det3(i, j, l);
        if (sg > 0)
          pos += sample.mass(l);
        else if (sg < 0)
          neg += sample.mass(l);
        else
          plane.push_back(l);
      }
      const std::size_t a0 = drop == 0 ? 1 : 0;
      const std::size_t a1 = drop == 2 ? 1 : 2;
      const Mass in_plane = critical_line_min(cs, sample, plane, a0, a1);
      best = std::min({best, pos + in_plane, neg + in_plane});
    }
  }
  if (!spanning) {
    // all vectors on one line through the centre
    Mass forward, backward;
    for (std::size_t l : m) (cs.dot(m.front(), l) > 0 ? forward : backward) += sample.mass(l);
    best = std::min(forward, backward);
  }
  return s.at_center + best;
}

double unit_normal_offset(std::span<const double> u, const WeightedSample& sample,
                          std::span<const double> x) {
  // half of the smallest positive projection u.(p - x), or 1 if none
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto p = sample.point(i);
    double t = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) t += u[k] * (p[k] - x[k]);
    if (t > 0.0) smallest = std::min(smallest, t);
  }
  return std::isfinite(smallest) ? 0.5 * smallest : 1.0;
}

// Directions of the cells of the arrangement of lines through x and the
// sample points, one per cell, plus both normals of every critical line.
std::vector<double> cell_angles(std::span<const double> x, const WeightedSample& sample) {
  std::vector<long double> crit;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto p = sample.point(i);
    const long double dx = static_cast<long double>(p[0]) - x[0];
    const long double dy = static_cast<long double>(p[1]) - x[1];
    if (dx == 0 && dy == 0) continue;
    const long double a = std::atan2(dy, dx);
    crit.push_back(a);
    crit.push_back(a > 0 ? a - std::acos(-1.0L) : a + std::acos(-1.0L));
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  std::vector<double> mids;
  const long double two_pi = 2 * std::acos(-1.0L);
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const long double a = crit[k];
    const long double b = k + 1 < crit.size() ? crit[k + 1] : crit[0] + two_pi;
    mids.push_back(static_cast<double>((a + b) / 2));
  }
  return mids;
}

}  // namespace

std::string family_name(const DepthFamily& family) {
  struct Visitor {
    std::string operator()(const HalfspaceAll&) const { return "halfspace"; }
    std::string operator()(const AxisParallel&) const { return "axis"; }
    std::string operator()(const IntervalComplements&) const { return "interval"; }
    std::string operator()(const BallComplements&) const { return "ball"; }
    std::string operator()(const ConvexCompactComplements&) const { return "convex"; }
  };
  return std::visit(Visitor{}, family);
}

DepthValue halfspace_depth_2d(std::span<const double> x, const WeightedSample& sample) {
  if (sample.dim() != 2) throw DimensionError("halfspace_depth_2d needs d = 2");
  check_point(x, sample);
  const CenteredSet cs(sample.coords(), 2, x);
  const Split s = split_at_center(cs, sample);
  return {s.at_center + sweep_min(cs, sample, s.moving), true, HalfspaceAll{}};
}

Mass halfspace_depth_2d(const RationalPoint2& x, const WeightedSample& sample) {
  if (sample.dim() != 2) throw DimensionError("halfspace_depth_2d needs d = 2");
  const Rational c[2] = {x.x, x.y};
  const CenteredSet cs(sample.coords(), 2, std::span<const Rational>(c, 2));
  const Split s = split_at_center(cs, sample);
  return s.at_center + sweep_min(cs, sample, s.moving);
}

DepthValue halfspace_depth_exact(std::span<const double> x, const WeightedSample& sample) {
  check_point(x, sample);
  if (sample.dim() > 3 || sample.size() > kExactMaxPoints)
    throw BudgetExceeded("exact depth limited to d <= 3 and n <= 200; use monte_carlo_depth");
  const CenteredSet cs(sample.coords(), sample.dim(), x);
  return {exact_enumeration(cs, sample), true, HalfspaceAll{}};
}

Mass halfspace_depth_exact(std::span<const Rational> x, const WeightedSample& sample) {
  if (x.size() != sample.dim()) throw DimensionError("query point dimension differs from sample");
  if (sample.dim() > 3 || sample.size() > kExactMaxPoints)
    throw BudgetExceeded("exact depth limited to d <= 3 and n <= 200");
  const CenteredSet cs(sample.coords(), sample.dim(), x);
  return exact_enumeration(cs, sample);
}

DepthValue monte_carlo_depth(std::span<const double> x, const WeightedSample& sample,
                             std::size_t trials, std::uint64_t seed) {
  check_point(x, sample);
  if (trials == 0) throw ParameterError("trials must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t d = sample.dim();
  Vector u(d);
  Mass best = Mass::one();
  for (std::size_t t = 0; t < trials; ++t) {
    double norm = 0.0;
    while (norm == 0.0) {
      norm = 0.0;
      for (double& c : u) {
        c = normal(rng);
        norm += c * c;
      }
    }
    Mass m;
    for (std::size_t i = 0; i < sample.size(); ++i)
      if (exact::dot_sign(u, sample.point(i), x) <= 0) m += sample.mass(i);
    best = std::min(best, m);
  }
  return {best, false, HalfspaceAll{}};
}

DepthValue axis_depth(std::span<const double> x, const WeightedSample& sample,
                      const ConeOrder& order) {
  check_point(x, sample);
  if (order.dim() != sample.dim()) throw DimensionError("order and sample dimension differ");
  const Vector cx = order.to_cone(x);
  std::vector<Vector> cone_points;
  cone_points.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) cone_points.push_back(order.to_cone(sample.point(i)));
  Mass best = Mass::one();
  for (std::size_t axis = 0; axis < sample.dim(); ++axis) {
    Mass below, above;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (cone_points[i][axis] <= cx[axis]) below += sample.mass(i);
      if (cone_points[i][axis] >= cx[axis]) above += sample.mass(i);
    }
    best = std::min({best, below, above});
  }
  return {best, true, AxisParallel{order}};
}

DepthValue ball_depth(std::span<const double> x, const WeightedSample& sample, double radius_cap) {
  check_point(x, sample);
  if (!(radius_cap > 0.0) || !std::isfinite(radius_cap))
    throw ParameterError("radius cap must be positive and finite");
  const std::size_t d = sample.dim();
  const std::size_t n = sample.size();
  Mass best = Mass::one();

  auto consider = [&](std::span<const double> c, double r) {
    if (!(r <= radius_cap) || !std::isfinite(r)) return;
    if (exact::ball_sign(x, c, r) >= 0) return;  // x must lie outside B
    best = std::min(best, Mass::one() - prob_ball(sample, c, r));
  };

  // radius grid anchored at the diameter, independent of the cap
  const double diam = sample.diameter();
  const double base = diam > 0.0 ? diam : 1.0;
  std::vector<double> radii;
  for (int k = -10; k <= 200; ++k) {
    const double r = std::ldexp(base, k);
    if (r > radius_cap) break;
    radii.push_back(r);
  }

  std::vector<Vector> directions;
  if (d == 2) {
    for (double a : cell_angles(x, sample)) {
      directions.push_back({std::cos(a), std::sin(a)});
      directions.push_back({-std::sin(a), std::cos(a)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = sample.point(i);
    Vector v(d);
    double norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = p[k] - x[k];
      norm += v[k] * v[k];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (double& c : v) c /= norm;
    directions.push_back(v);
  }
  for (std::size_t k = 0; k < d; ++k) {
    Vector e(d, 0.0);
    e[k] = 1.0;
    directions.push_back(e);
  }

  Vector c(d);
  for (Vector u : directions) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      if (sgn == 1)
        for (double& v : u) v = -v;
      const double eta = unit_normal_offset(u, sample, x);
      for (double r : radii) {
        for (std::size_t k = 0; k < d; ++k) c[k] = x[k] + (r + eta) * u[k];
        consider(c, r);
      }
    }
  }

  if (n <= kBallPairMaxPoints) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto p = sample.point(i), q = sample.point(j);
        double r2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          c[k] = 0.5 * (p[k] + q[k]);
          r2 += (p[k] - c[k]) * (p[k] - c[k]);
        }
        consider(c, std::sqrt(r2) * (1.0 + 1e-12));
      }
    }
  }
  if (d == 2 && n <= kBallTripleMaxPoints) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          const auto a = sample.point(i), b = sample.point(j), e = sample.point(k);
          const double bx = b[0] - a[0], by = b[1] - a[1];
          const double ex = e[0] - a[0], ey = e[1] - a[1];
          const double den = 2.0 * (bx * ey - by * ex);
          if (den == 0.0) continue;
          const double b2 = bx * bx + by * by, e2 = ex * ex + ey * ey;
          const double ux = (ey * b2 - by * e2) / den;
          const double uy = (bx * e2 - ex * b2) / den;
          c[0] = a[0] + ux;
          c[1] = a[1] + uy;
          consider(c, std::hypot(ux, uy) * (1.0 + 1e-12));
        }
      }
    }
  }
  return {best, false, BallComplements{radius_cap}};
}

DepthValue depth_oracle(std::span<const double> x, const WeightedSample& sample) {
  if (sample.dim() != 2) throw DimensionError("depth_oracle needs d = 2");
  check_point(x, sample);
  const std::size_t n = sample.size();
  if (n > kOracleMaxPoints) throw BudgetExceeded("depth_oracle limited to n <= 30");
  const Point2 c{x[0], x[1]};
  auto pt = [&](std::size_t i) { return Point2{sample.point(i)[0], sample.point(i)[1]}; };

  Mass best = Mass::one();
  auto closed_sides = [&](auto&& side) {
    Mass ge, le;
    for (std::size_t l = 0; l < n; ++l) {
      const int s = side(pt(l));
      if (s >= 0) ge += sample.mass(l);
      if (s <= 0) le += sample.mass(l);
    }
    best = std::min({best, ge, le});
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = pt(i);
    if (p == c) continue;
    // boundary line through x and p_i
    closed_sides([&](Point2 q) { return exact::orient2d(c, p, q); });
    // same line turned infinitesimally: one open side plus one ray
    for (int s : {1, -1}) {
      Mass m;
      for (std::size_t l = 0; l < n; ++l) {
        const Point2 q = pt(l);
        const int o = s * exact::orient2d(c, p, q);
        if (q == c || o > 0 || (o == 0 && s * exact::dot_sign(c, p, c, q) < 0))
          m += sample.mass(l);
      }
      best = std::min(best, m);
    }
  }
  // boundary through x parallel to p_j - p_i
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pt(i) != pt(j))
        closed_sides([&](Point2 q) { return exact::cross_sign(pt(i), pt(j), c, q); });
  return {best, true, HalfspaceAll{}};
}

Mass halfspace_depth_open_2d(std::span<const double> x, const WeightedSample& sample) {
  if (sample.dim() != 2) throw DimensionError("open halfplane depth needs d = 2");
  check_point(x, sample);
  const std::size_t n = sample.size();
  std::vector<std::array<Rational, 2>> v;
  for (std::size_t i = 0; i < n; ++i)
    v.push_back({Rational(sample.point(i)[0]) - x[0], Rational(sample.point(i)[1]) - x[1]});

  // Open halfplane {p : nrm.(p - x) < c} with c half the smallest positive
  // projection; its closure misses every atom outside it.
  Mass best = Mass::one();
  auto evaluate = [&](const Rational& wx, const Rational& wy) {
    const Rational nx = -wy, ny = wx;
    std::vector<Rational> proj(n);
    Rational cut = 0;
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      proj[k] = nx * v[k][0] + ny * v[k][1];
      if (proj[k] > 0 && (!any || proj[k] < cut)) {
        cut = proj[k];
        any = true;
      }
    }
    if (!any) return;
    cut /= 2;
    Mass m;
    for (std::size_t k = 0; k < n; ++k)
      if (proj[k] < cut) m += sample.mass(k);
    best = std::min(best, m);
  };

  // Boundary directions s_i v_i + s_j v_j lie strictly inside every angular
  // cell of the critical directions; perpendiculars cover the collinear case.
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(v[i][0]) == 0 && sgn(v[i][1]) == 0) continue;
    evaluate(-v[i][1], v[i][0]);
    evaluate(v[i][1], -v[i][0]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[i][0] * v[j][1] - v[i][1] * v[j][0] == 0) continue;
      for (int si : {1, -1})
        for (int sj : {1, -1})
          evaluate(si * v[i][0] + sj * v[j][0], si * v[i][1] + sj * v[j][1]);
    }
  }
  return best;
}

DepthValue depth(std::span<const double> x, const WeightedSample& sample,
                 const DepthFamily& family) {
  struct Visitor {
    std::span<const double> x;
    const WeightedSample& sample;
    DepthValue operator()(const HalfspaceAll&) const {
      if (sample.dim() == 2) return halfspace_depth_2d(x, sample);
      return halfspace_depth_exact(x, sample);
    }
    DepthValue operator()(const AxisParallel& f) const { return axis_depth(x, sample, f.order); }
    DepthValue operator()(const IntervalComplements& f) const {
      DepthValue v = axis_depth(x, sample, f.order);
      v.family = f;
      return v;
    }
    DepthValue operator()(const BallComplements& f) const {
      return ball_depth(x, sample, f.radius_cap);
    }
    // Complements of compact convex sets avoiding x give the same infimum as
    // closed halfspaces for finitely supported measures.
    DepthValue operator()(const ConvexCompactComplements& f) const {
      DepthValue v = (*this)(HalfspaceAll{});
      v.family = f;
      return v;
    }
  };
  return std::visit(Visitor{x, sample}, family);
}

}  // namespace depthlab
