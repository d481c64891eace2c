#include "depthlab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "depthlab/errors.hpp"
#include "depthlab/polygon.hpp"

namespace depthlab {

namespace {

constexpr std::size_t kBound3dMaxPoints = 10;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
}

void check_planar(const WeightedSample& sample) {
  if (sample.dim() != 2) throw DimensionError("planar regions need d = 2");
}

Point2 point2(const WeightedSample& s, std::size_t i) { return {s.point(i)[0], s.point(i)[1]}; }

std::array<double, 4> sample_bounds(const WeightedSample& s) {
  std::array<double, 4> b{std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < s.size(); ++i) {
    b[0] = std::min(b[0], s.point(i)[0]);
    b[1] = std::max(b[1], s.point(i)[0]);
    b[2] = std::min(b[2], s.point(i)[1]);
    b[3] = std::max(b[3], s.point(i)[1]);
  }
  return b;
}

// Axis region at an exact level.
RegionPolytope axis_box(const ConeOrder& order, const WeightedSample& sample, Mass level,
                        double alpha) {
  if (order.dim() != sample.dim()) throw DimensionError("order and sample dimension differ");
  RegionPolytope r;
  r.dim = sample.dim();
  r.alpha = alpha;
  Vector lo(order.dim()), hi(order.dim());
  for (std::size_t i = 0; i < order.dim(); ++i) {
    const auto q = quantiles(cone_projection(order, sample, i), sample.masses(), level, alpha);
    if (q.q_lo > q.q_hi) return r;
    lo[i] = q.q_lo;
    hi[i] = q.q_hi;
  }
  r.kind = RegionPolytope::Kind::Box;
  if (r.dim == 2) {
    const double cs[4][2] = {{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}};
    for (const auto& c : cs) {
      const Vector p = order.from_cone(c);
      r.vertices.push_back({p[0], p[1]});
    }
    if (order.generators().determinant() < 0) std::reverse(r.vertices.begin(), r.vertices.end());
    r.vertices.erase(std::unique(r.vertices.begin(), r.vertices.end()), r.vertices.end());
    while (r.vertices.size() > 1 && r.vertices.back() == r.vertices.front()) r.vertices.pop_back();
  }
  r.box = OrderInterval(order, std::move(lo), std::move(hi));
  return r;
}

// Largest univariate depth along every cone axis; the axis depth is separable,
// so its maximum is the smallest of these.
Mass axis_max_depth(const ConeOrder& order, const WeightedSample& sample) {
  Mass best = Mass::one();
  for (std::size_t i = 0; i < order.dim(); ++i) {
    const auto values = cone_projection(order, sample, i);
    Mass axis_best;
    for (double t : values) {
      Mass below, above;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] <= t) below += sample.mass(k);
        if (values[k] >= t) above += sample.mass(k);
      }
      axis_best = std::max(axis_best, std::min(below, above));
    }
    best = std::min(best, axis_best);
  }
  return best;
}

// Closed halfplanes {q : cross(to - from, q - anchor) >= 0} whose boundary is
// parallel to a difference of two sample points (or to an axis), with the
// sample sorted along each normal so that the tightest anchor for any level
// is found by binary search.
class HalfplaneCuts {
 public:
  explicit HalfplaneCuts(const WeightedSample& sample) : sample_(sample) {
    const std::size_t n = sample.size();
    std::vector<std::pair<Point2, Point2>> dirs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && point2(sample, i) != point2(sample, j))
          dirs.emplace_back(point2(sample, i), point2(sample, j));
      }
    }
    const Point2 o{0, 0}, ex{1, 0}, ey{0, 1};
    dirs.emplace_back(o, ex);
    dirs.emplace_back(ex, o);
    dirs.emplace_back(o, ey);
    dirs.emplace_back(ey, o);
    unique_directions(dirs);

    for (const auto& [from, to] : dirs) {
      Cut cut{from, to, {}, {}};
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      // descending height cross(d, p)
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return exact::cross_sign(from, to, point2(sample, b), point2(sample, a)) > 0;
      });
      Mass cum;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = idx[k];
        const bool same = k > 0 && exact::cross_sign(from, to, point2(sample, idx[k - 1]),
                                                     point2(sample, i)) == 0;
        cum += sample.mass(i);
        if (same) {
          cut.cum.back() = cum;
        } else {
          cut.cum.push_back(cum);
          cut.anchor.push_back(i);
        }
      }
      for (const Mass& m : cut.cum) levels_.push_back(m);
      cuts_.push_back(std::move(cut));
    }
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  }

  // Distinct masses of the candidate halfplanes, ascending.
  const std::vector<Mass>& levels() const { return levels_; }

  // Exact vertices of the intersection of all candidate halfplanes with mass
  // > 1 - level; empty when the intersection is empty.
  std::vector<RationalPoint2> region(Mass level) const {
    const auto b = sample_bounds(sample_);
    ClipPolygon poly = ClipPolygon::rectangle(b[0], b[1], b[2], b[3]);
    const Mass outside = Mass::one() - level;
    for (const Cut& cut : cuts_) {
      const auto it = std::upper_bound(cut.cum.begin(), cut.cum.end(), outside);
      if (it == cut.cum.end()) return {};
      const std::size_t anchor = cut.anchor[static_cast<std::size_t>(it - cut.cum.begin())];
      poly.clip(ClipLine{point2(sample_, anchor), cut.from, cut.to});
      if (poly.empty()) return {};
    }
    return convex_hull(poly.vertices());
  }

 private:
  struct Cut {
    Point2 from, to;
    std::vector<Mass> cum;            // cumulative mass from the top, per height group
    std::vector<std::size_t> anchor;  // a sample point of each group
  };

  static int half(const std::pair<Point2, Point2>& d) {
    if (d.second.y != d.first.y) return d.second.y > d.first.y ? 0 : 1;
    return d.second.x > d.first.x ? 0 : 1;
  }

  // sort by exact angle and drop repeated directions
  static void unique_directions(std::vector<std::pair<Point2, Point2>>& dirs) {
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
      const int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return exact::cross_sign(a.first, a.second, b.first, b.second) > 0;
    });
    std::vector<std::pair<Point2, Point2>> out;
    for (const auto& d : dirs) {
      if (!out.empty() && half(out.back()) == half(d) &&
          exact::cross_sign(out.back().first, out.back().second, d.first, d.second) == 0)
        continue;
      out.push_back(d);
    }
    dirs = std::move(out);
  }

  const WeightedSample& sample_;
  std::vector<Cut> cuts_;
  std::vector<Mass> levels_;
};

Mass max_vertex_depth(const std::vector<RationalPoint2>& vertices, const WeightedSample& sample) {
  Mass best;
  for (const auto& v : vertices) best = std::max(best, halfspace_depth_2d(v, sample));
  return best;
}

CenterResult halfspace_center_2d(const WeightedSample& sample) {
  const HalfplaneCuts cuts(sample);
  const auto& levels = cuts.levels();

  // Invariant: the region at `lo` is nonempty, the region at `hi` is empty.
  Mass lo;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto p = sample.point(i);
    lo = std::max(lo, halfspace_depth_2d(p, sample).mass);
  }
  Mass hi = Mass::one() + Mass{1};
  while (hi.ticks() - lo.ticks() > 1) {
    const auto first = std::upper_bound(levels.begin(), levels.end(), lo);
    const auto last = std::lower_bound(levels.begin(), levels.end(), hi);
    const Mass mid = first < last ? *(first + (last - first) / 2) : lo + Mass{1};
    auto region = cuts.region(mid);
    if (region.empty()) {
      hi = mid;
    } else {
      lo = std::max(mid, max_vertex_depth(region, sample));
    }
  }
  CenterResult out;
  out.level = lo;
  out.alpha_max = lo.value();
  out.region = RegionPolytope::polygon(cuts.region(lo), lo.value());
  return out;
}

// --- three-dimensional bound ----------------------------------------------

using Rational3 = std::array<Rational, 3>;

Rational3 cross3(const Rational3& a, const Rational3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational dot3(const Rational3& a, const Rational3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

bool is_zero3(const Rational3& a) { return sgn(a[0]) == 0 && sgn(a[1]) == 0 && sgn(a[2]) == 0; }

struct Plane {
  Rational3 normal;
  Rational offset;
};

// Scales so that the first nonzero normal component is 1.
Plane normalized(Rational3 normal, Rational offset) {
  for (const auto& c : normal) {
    if (sgn(c) != 0) {
      const Rational s = c;
      for (auto& v : normal) v /= s;
      offset /= s;
      break;
    }
  }
  return {std::move(normal), std::move(offset)};
}

bool plane_less(const Plane& a, const Plane& b) {
  for (int k = 0; k < 3; ++k)
    if (a.normal[k] != b.normal[k]) return a.normal[k] < b.normal[k];
  return a.offset < b.offset;
}

bool plane_equal(const Plane& a, const Plane& b) {
  return a.normal == b.normal && a.offset == b.offset;
}

Mass simplex_bound_3d(const WeightedSample& sample) {
  const std::size_t n = sample.size();
  if (n > kBound3dMaxPoints)
    throw BudgetExceeded("the three-dimensional bound check is limited to n <= " +
                         std::to_string(kBound3dMaxPoints) + " points");
  std::vector<Rational3> p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) p[i][k] = Rational(sample.point(i)[k]);

  std::vector<Plane> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Rational3 u{p[j][0] - p[i][0], p[j][1] - p[i][1], p[j][2] - p[i][2]};
        const Rational3 v{p[k][0] - p[i][0], p[k][1] - p[i][1], p[k][2] - p[i][2]};
        Rational3 nrm = cross3(u, v);
        if (is_zero3(nrm)) continue;
        const Rational off = dot3(nrm, p[i]);
        planes.push_back(normalized(std::move(nrm), off));
      }
  std::sort(planes.begin(), planes.end(), plane_less);
  planes.erase(std::unique(planes.begin(), planes.end(), plane_equal), planes.end());

  // coplanar sample: add the planes through two points perpendicular to it
  if (planes.size() == 1) {
    const Rational3 base = planes.front().normal;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational3 u{p[j][0] - p[i][0], p[j][1] - p[i][1], p[j][2] - p[i][2]};
        Rational3 nrm = cross3(u, base);
        if (is_zero3(nrm)) continue;
        const Rational off = dot3(nrm, p[i]);
        planes.push_back(normalized(std::move(nrm), off));
      }
    std::sort(planes.begin(), planes.end(), plane_less);
    planes.erase(std::unique(planes.begin(), planes.end(), plane_equal), planes.end());
  }

  // Floating copies used only to skip vertices that cannot beat the current
  // best: a tolerant closed-halfspace count is an upper bound on the depth.
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) scale = std::max(scale, std::abs(sample.point(i)[k]));
  const double tol = 1e-9 * scale;
  std::vector<std::array<double, 3>> units;
  for (const Plane& pl : planes) {
    std::array<double, 3> u{pl.normal[0].get_d(), pl.normal[1].get_d(), pl.normal[2].get_d()};
    const double len = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (double& c : u) c /= len;
    units.push_back(u);
  }
  units.push_back({1, 0, 0});
  units.push_back({0, 1, 0});
  units.push_back({0, 0, 1});
  auto upper_bound_at = [&](const std::array<double, 3>& x) {
    Mass ub = Mass::one();
    for (const auto& u : units) {
      Mass le, ge;
      for (std::size_t i = 0; i < n; ++i) {
        const auto q = sample.point(i);
        const double t = u[0] * (q[0] - x[0]) + u[1] * (q[1] - x[1]) + u[2] * (q[2] - x[2]);
        if (t <= tol) le += sample.mass(i);
        if (t >= -tol) ge += sample.mass(i);
      }
      ub = std::min({ub, le, ge});
    }
    return ub;
  };

  Mass best;
  for (std::size_t i = 0; i < n; ++i)
    best = std::max(best, halfspace_depth_exact(sample.point(i), sample).mass);

  std::vector<std::array<double, 3>> nd(planes.size());
  std::vector<double> od(planes.size());
  for (std::size_t a = 0; a < planes.size(); ++a) {
    for (int k = 0; k < 3; ++k) nd[a][k] = planes[a].normal[k].get_d();
    od[a] = planes[a].offset.get_d();
  }
  auto cross_d = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                 a[0] * b[1] - a[1] * b[0]};
  };
  std::set<Rational3> seen;
  for (std::size_t a = 0; a < planes.size(); ++a)
    for (std::size_t b = a + 1; b < planes.size(); ++b) {
      const Rational3 ab = cross3(planes[a].normal, planes[b].normal);
      if (is_zero3(ab)) continue;
      const auto abd = cross_d(nd[a], nd[b]);
      for (std::size_t c = b + 1; c < planes.size(); ++c) {
        const auto bcd = cross_d(nd[b], nd[c]), cad = cross_d(nd[c], nd[a]);
        const double detd = abd[0] * nd[c][0] + abd[1] * nd[c][1] + abd[2] * nd[c][2];
        const double mag = std::sqrt(abd[0] * abd[0] + abd[1] * abd[1] + abd[2] * abd[2]) *
                           std::sqrt(nd[c][0] * nd[c][0] + nd[c][1] * nd[c][1] + nd[c][2] * nd[c][2]);
        if (std::abs(detd) > 1e-6 * mag) {
          std::array<double, 3> xd;
          for (int k = 0; k < 3; ++k) xd[k] = (od[a] * bcd[k] + od[b] * cad[k] + od[c] * abd[k]) / detd;
          if (upper_bound_at(xd) <= best) continue;
        }
        const Rational det = dot3(ab, planes[c].normal);
        if (sgn(det) == 0) continue;
        // x = (d_a (n_b x n_c) + d_b (n_c x n_a) + d_c (n_a x n_b)) / det
        const Rational3 bc = cross3(planes[b].normal, planes[c].normal);
        const Rational3 ca = cross3(planes[c].normal, planes[a].normal);
        Rational3 x;
        for (int k = 0; k < 3; ++k)
          x[k] = (planes[a].offset * bc[k] + planes[b].offset * ca[k] + planes[c].offset * ab[k]) / det;
        if (!seen.insert(x).second) continue;
        best = std::max(best, halfspace_depth_exact(std::span<const Rational>(x.data(), 3), sample));
      }
    }
  return best;
}

}  // namespace

RegionPolytope RegionPolytope::polygon(std::vector<RationalPoint2> points, double alpha) {
  RegionPolytope r;
  r.dim = 2;
  r.alpha = alpha;
  r.exact_vertices = convex_hull(std::move(points));
  if (r.exact_vertices.empty()) return r;
  r.kind = Kind::Polygon;
  for (const auto& v : r.exact_vertices) r.vertices.push_back(v.approx());
  return r;
}

bool RegionPolytope::contains(std::span<const double> x) const {
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::FullSpace: return true;
    case Kind::Box: return box->contains(x);
    case Kind::Polygon:
      if (x.size() != 2) throw DimensionError("polygon membership needs a 2-vector");
      return hull_contains(exact_vertices, RationalPoint2{Rational(x[0]), Rational(x[1])});
  }
  return false;
}

bool RegionPolytope::contains(std::span<const double> x, double tol) const {
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::FullSpace: return true;
    case Kind::Box: {
      const Vector c = box->order.to_cone(x);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] < box->lower[i] - tol || c[i] > box->upper[i] + tol) return false;
      return true;
    }
    case Kind::Polygon:
      if (x.size() != 2) throw DimensionError("polygon membership needs a 2-vector");
      return hull_distance(vertices, {x[0], x[1]}) <= tol;
  }
  return false;
}

RegionPolytope region_axis(const ConeOrder& order, const WeightedSample& sample, double alpha) {
  check_alpha(alpha);
  return axis_box(order, sample, Mass::threshold(alpha), alpha);
}

RegionPolytope region_halfspace_2d(const WeightedSample& sample, double alpha) {
  check_alpha(alpha);
  check_planar(sample);
  RegionPolytope r = region_halfspace_2d(sample, Mass::threshold(alpha));
  r.alpha = alpha;
  return r;
}

RegionPolytope region_halfspace_2d(const WeightedSample& sample, Mass level) {
  check_planar(sample);
  if (level <= Mass::zero() || level > Mass::one()) throw ParameterError("level must lie in (0, 1]");
  return RegionPolytope::polygon(HalfplaneCuts(sample).region(level), level.value());
}

CenterResult center(const WeightedSample& sample, const DepthFamily& family) {
  auto axis_center = [&](const ConeOrder& order) {
    CenterResult out;
    out.level = axis_max_depth(order, sample);
    out.alpha_max = out.level.value();
    out.region = axis_box(order, sample, out.level, out.alpha_max);
    return out;
  };
  auto halfspace = [&]() {
    if (sample.dim() == 1) return axis_center(ConeOrder::identity(1));
    if (sample.dim() != 2)
      throw ParameterError("halfspace centers are computed for d <= 2 only");
    return halfspace_center_2d(sample);
  };
  if (std::holds_alternative<HalfspaceAll>(family) ||
      std::holds_alternative<ConvexCompactComplements>(family))
    return halfspace();
  if (const auto* f = std::get_if<AxisParallel>(&family)) return axis_center(f->order);
  if (const auto* f = std::get_if<IntervalComplements>(&family)) return axis_center(f->order);
  throw ParameterError("center is not available for ball complements");
}

BoundCheck bound_check(const WeightedSample& sample) {
  const std::size_t d = sample.dim();
  BoundCheck out;
  if (d <= 2)
    out.level = center(sample, HalfspaceAll{}).level;
  else if (d == 3)
    out.level = simplex_bound_3d(sample);
  else
    throw BudgetExceeded("bound check supports d <= 3");
  out.alpha_max = out.level.value();
  out.bound = 1.0 / static_cast<double>(d + 1);
  out.holds = out.level.ticks() * static_cast<Mass::Ticks>(d + 1) >= Mass::kTotal;
  return out;
}

RegionPolytope rotated_axis_intersection(const WeightedSample& sample,
                                         std::span<const double> angles, double alpha) {
  check_alpha(alpha);
  check_planar(sample);
  if (angles.empty()) throw ParameterError("at least one rotation angle is required");
  std::vector<RegionPolytope> boxes;
  auto b = sample_bounds(sample);
  for (double a : angles) {
    boxes.push_back(region_axis(ConeOrder::rotation(a), sample, alpha));
    if (boxes.back().empty()) {
      RegionPolytope r;
      r.alpha = alpha;
      return r;
    }
    for (const Point2& c : boxes.back().vertices) {
      b[0] = std::min(b[0], c.x);
      b[1] = std::max(b[1], c.x);
      b[2] = std::min(b[2], c.y);
      b[3] = std::max(b[3], c.y);
    }
  }
  const double pad = 1.0 + std::max(b[1] - b[0], b[3] - b[2]);
  ClipPolygon poly = ClipPolygon::rectangle(b[0] - pad, b[1] + pad, b[2] - pad, b[3] + pad);
  for (const auto& box : boxes) {
    const OrderInterval& j = *box.box;
    const Eigen::MatrixXd& g = j.order.generators();
    // Cone coordinates of a rotated order are rounded; widen its box by a
    // relative 1e-13 so that boxes meeting in one point still intersect.
    Vector lo = j.lower, hi = j.upper;
    if (!j.order.is_identity()) {
      double scale = 1.0;
      for (std::size_t i = 0; i < 2; ++i) scale = std::max({scale, std::abs(lo[i]), std::abs(hi[i])});
      for (std::size_t i = 0; i < 2; ++i) {
        lo[i] -= 1e-13 * scale;
        hi[i] += 1e-13 * scale;
      }
    }
    const Vector lower = j.order.from_cone(lo), upper = j.order.from_cone(hi);
    for (int i = 0; i < 2; ++i) {
      const int k = 1 - i;
      const Point2 gi{g(0, i), g(1, i)}, gk{g(0, k), g(1, k)};
      // orient the boundary direction so that +g_i points to its left
      const double turn = gk.x * gi.y - gk.y * gi.x;
      const Point2 dir = turn > 0 ? gk : Point2{-gk.x, -gk.y};
      const Point2 back{-dir.x, -dir.y};
      poly.clip(ClipLine{{lower[0], lower[1]}, {0, 0}, dir});
      poly.clip(ClipLine{{upper[0], upper[1]}, {0, 0}, back});
    }
  }
  return RegionPolytope::polygon(poly.vertices(), alpha);
}

std::vector<Point2> region_grid_oracle(const WeightedSample& sample, const DepthFamily& family,
                                       double alpha, const GridSpec& grid) {
  check_planar(sample);
  check_alpha(alpha);
  if (grid.nx < 2 || grid.ny < 2) throw ParameterError("grid needs at least two points per axis");
  std::array<double, 4> b;
  if (grid.bounds) {
    b = *grid.bounds;
  } else {
    b = sample_bounds(sample);
    const double wx = std::max(b[1] - b[0], 1.0) / 4, wy = std::max(b[3] - b[2], 1.0) / 4;
    b = {b[0] - wx, b[1] + wx, b[2] - wy, b[3] + wy};
  }
  const Mass need = Mass::threshold(alpha);
  std::vector<Point2> out;
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    const double y = b[2] + (b[3] - b[2]) * static_cast<double>(iy) / static_cast<double>(grid.ny - 1);
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double x =
          b[0] + (b[1] - b[0]) * static_cast<double>(ix) / static_cast<double>(grid.nx - 1);
      const double q[2] = {x, y};
      if (depth(q, sample, family).mass >= need) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace depthlab
