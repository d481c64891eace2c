#include "depthlab/jensen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "depthlab/errors.hpp"
#include "depthlab/order.hpp"

namespace depthlab {

namespace {

constexpr double kHoldsTol = 1e-12;

// Resolution per axis so that the full grid stays within `max_points`.
std::size_t fit_resolution(std::size_t per_axis, std::size_t dim, std::size_t max_points) {
  std::size_t k = std::max<std::size_t>(per_axis, 2);
  while (k > 2) {
    double total = 1.0;
    for (std::size_t i = 0; i < dim; ++i) total *= static_cast<double>(k);
    if (total <= static_cast<double>(max_points)) break;
    --k;
  }
  return k;
}

std::vector<double> axis_values(double lo, double hi, std::size_t k) {
  if (lo == hi || k < 2) return {lo};
  std::vector<double> v(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(k - 1);
    v[j] = lo + t * (hi - lo);
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

// Ambient points of a regular grid over a finite box given in cone
// coordinates; the corners are always included.
std::vector<Vector> box_grid(const OrderInterval& box, std::size_t k) {
  const std::size_t d = box.dim();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t i = 0; i < d; ++i) axes[i] = axis_values(box.lower[i], box.upper[i], k);
  std::vector<Vector> out;
  std::vector<std::size_t> idx(d, 0);
  Vector c(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) c[i] = axes[i][idx[i]];
    out.push_back(box.order.from_cone(c));
    std::size_t i = 0;
    while (i < d && ++idx[i] == axes[i].size()) idx[i++] = 0;
    if (i == d) break;
  }
  return out;
}

void require_finite(const OrderInterval& box, const char* what) {
  if (!box.is_finite() || !box.nonempty()) throw ParameterError(what);
}

CFunctionCheck check_intervals(const ConeOrder& order, const std::vector<Vector>& pts,
                               const std::vector<double>& vals, std::span<const double> levels) {
  std::vector<Vector> cone(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) cone[i] = order.to_cone(pts[i]);
  const std::size_t d = order.dim();
  for (double t : levels) {
    Vector lo(d, std::numeric_limits<double>::infinity());
    Vector hi(d, -std::numeric_limits<double>::infinity());
    bool any = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(vals[i] <= t)) continue;
      any = true;
      for (std::size_t k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], cone[i][k]);
        hi[k] = std::max(hi[k], cone[i][k]);
      }
    }
    if (!any) continue;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool inside = true;
      for (std::size_t k = 0; k < d && inside; ++k)
        inside = lo[k] <= cone[i][k] && cone[i][k] <= hi[k];
      if (inside && vals[i] > t + kHoldsTol * std::max(1.0, std::abs(t)))
        return {false, pts[i], t, vals[i]};
    }
  }
  return {};
}

CFunctionCheck check_quasi_convex(const CFunctionSpec& f, const OrderInterval& box,
                                  const ProbeGrid& grid) {
  std::mt19937_64 rng(grid.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t d = box.dim();
  auto draw = [&] {
    Vector c(d);
    for (std::size_t k = 0; k < d; ++k)
      c[k] = box.lower[k] + unit(rng) * (box.upper[k] - box.lower[k]);
    return box.order.from_cone(c);
  };
  Vector z(d);
  for (std::size_t t = 0; t < grid.triples; ++t) {
    const Vector x = draw(), y = draw();
    const double lambda = unit(rng);
    for (std::size_t k = 0; k < d; ++k) z[k] = lambda * x[k] + (1.0 - lambda) * y[k];
    const double top = std::max(f(x), f(y));
    const double fz = f(z);
    if (fz > top + kHoldsTol * std::max(1.0, std::abs(top))) return {false, z, top, fz};
  }
  return {};
}

bool same_order(const SublevelFamily& fam, const ConeOrder& order) {
  const auto* iv = std::get_if<IntervalSublevels>(&fam);
  return iv && iv->order == order;
}

// Points at which f is evaluated over a center region.
std::vector<Vector> region_probes(const RegionPolytope& region, std::size_t per_axis) {
  std::vector<Vector> out;
  if (region.kind == RegionPolytope::Kind::Box) {
    const std::size_t k = fit_resolution(per_axis, region.box->dim(), 1u << 20);
    return box_grid(*region.box, k);
  }
  if (region.kind != RegionPolytope::Kind::Polygon)
    throw ParameterError("center region is not bounded");
  const auto& v = region.vertices;
  for (const Point2& p : v) out.push_back({p.x, p.y});
  const std::size_t k = std::max<std::size_t>(per_axis, 2);
  for (std::size_t i = 0; v.size() > 1 && i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    for (std::size_t j = 1; j + 1 < k; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(k - 1);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
  for (const Point2& p : v) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  for (double x : axis_values(xmin, xmax, k))
    for (double y : axis_values(ymin, ymax, k)) {
      const double q[2] = {x, y};
      if (region.contains(q)) out.push_back({x, y});
    }
  return out;
}

}  // namespace

CFunctionCheck check_cfunction(const CFunctionSpec& f, const OrderInterval& probe_box,
                               const ProbeGrid& grid, std::span<const double> levels) {
  require_finite(probe_box, "the probe box must be finite and nonempty");
  if (const auto* iv = std::get_if<IntervalSublevels>(&f.family)) {
    if (iv->order.dim() != probe_box.dim())
      throw DimensionError("probe box and order dimension differ");
    const std::size_t k = fit_resolution(grid.per_axis, probe_box.dim(), grid.max_points);
    const auto pts = box_grid(probe_box, k);
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
    if (!levels.empty()) return check_intervals(iv->order, pts, vals, levels);
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<double> picked;
    const std::size_t m = std::min<std::size_t>(sorted.size(), 33);
    for (std::size_t j = 0; j < m; ++j)
      picked.push_back(sorted[m == 1 ? 0 : j * (sorted.size() - 1) / (m - 1)]);
    return check_intervals(iv->order, pts, vals, picked);
  }
  return check_quasi_convex(f, probe_box, grid);
}

QuantilePair pushforward_medians(const CFunctionSpec& f, const WeightedSample& sample) {
  std::vector<double> vals(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) vals[i] = f(sample.point(i));
  return quantiles(vals, sample.masses(), Mass::threshold(0.5), 0.5);
}

JensenMedian jensen_median(const ConeOrder& order, const CFunctionSpec& f,
                           const WeightedSample& sample, std::size_t per_axis) {
  if (order.dim() != sample.dim()) throw DimensionError("order and sample dimension differ");
  if (!same_order(f.family, order))
    throw PreconditionError("jensen_median needs interval sublevel sets of the same order");

  // probe the function on the box spanned by the sample in cone coordinates
  const std::size_t d = order.dim();
  Vector lo(d, std::numeric_limits<double>::infinity());
  Vector hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Vector c = order.to_cone(sample.point(i));
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  const auto check = check_cfunction(f, OrderInterval(order, lo, hi));
  if (!check) throw PreconditionError(f.label + " has a sublevel set that is not an interval");

  const OrderInterval box = median_set(order, sample);
  const auto pts = box_grid(box, fit_resolution(per_axis, d, 1u << 20));
  std::size_t best = 0;
  double f_best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = f(pts[i]);
    if (v < f_best) {
      f_best = v;
      best = i;
    }
  }
  const QuantilePair med = pushforward_medians(f, sample);
  return JensenMedian{pts[best], f_best, med, box, f_best <= med.q_lo + kHoldsTol};
}

JensenGeneral jensen_general(const DepthFamily& family, const CFunctionSpec& f,
                             const WeightedSample& sample, std::size_t per_axis) {
  // order intervals are convex, so interval C-functions also suit convex families
  const bool convex_family = std::holds_alternative<HalfspaceAll>(family) ||
                             std::holds_alternative<ConvexCompactComplements>(family);
  bool compatible = convex_family;
  if (const auto* a = std::get_if<AxisParallel>(&family)) compatible = same_order(f.family, a->order);
  if (const auto* a = std::get_if<IntervalComplements>(&family))
    compatible = same_order(f.family, a->order);
  if (!compatible)
    throw PreconditionError(f.label + " does not match the sets of the " + family_name(family) +
                            " family");

  const CenterResult c = center(sample, family);
  std::vector<double> vals(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) vals[i] = f(sample.point(i));
  const QuantilePair q = quantiles(vals, sample.masses(), c.level, c.alpha_max);

  JensenGeneral out;
  out.alpha_max = c.alpha_max;
  out.q = q.q_hi;
  out.f_max = -std::numeric_limits<double>::infinity();
  const auto pts = region_probes(c.region, per_axis);
  for (const Vector& m : pts) {
    const double v = f(m);
    if (v > out.f_max) {
      out.f_max = v;
      out.argmax = m;
    }
  }
  out.evaluated = pts.size();
  out.worst_gap = out.f_max - out.q;
  out.holds = out.worst_gap <= kHoldsTol;
  out.region = c.region;
  return out;
}

CFunctionSpec builtin_cfunction(std::string_view name, std::span<const double> params,
                                const ConeOrder& order) {
  const std::size_t d = order.dim();
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw ParameterError(std::string(name) + " takes " + std::to_string(count) +
                           " parameters, got " + std::to_string(params.size()));
  };
  if (name == "gauge-box") {
    need(2 * d);
    const Vector a(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(d));
    const Vector b(params.begin() + static_cast<std::ptrdiff_t>(d), params.end());
    auto f = [order, a, b](std::span<const double> x) {
      const Vector y = order.to_cone(x);
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < y.size(); ++i)
        m = std::max(m, std::abs(y[i] - a[i]) - std::abs(y[i] - b[i]));
      return m;
    };
    return {f, IntervalSublevels{order}, "gauge-box"};
  }
  if (name == "sqnorm") {
    need(0);
    auto f = [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    };
    return {f, ConvexSublevels{}, "sqnorm"};
  }
  if (name == "proj-i") {
    need(1);
    const double idx = params[0];
    if (!(idx >= 0 && idx < static_cast<double>(d) && idx == std::floor(idx)))
      throw ParameterError("proj-i needs a coordinate index below the dimension");
    const auto i = static_cast<std::size_t>(idx);
    auto f = [order, i](std::span<const double> x) {
      return order.is_identity() ? x[i] : order.to_cone(x)[i];
    };
    return {f, IntervalSublevels{order}, "proj-" + std::to_string(i)};
  }
  if (name == "exp-line" || name == "paper-exp-line") {
    if (d != 2) throw DimensionError("exp-line is planar");
    need(6);
    const double ax = params[0], ay = params[1], bx = params[2], by = params[3];
    const double ux = bx - ax, uy = by - ay;
    const double len = std::hypot(ux, uy);
    if (len == 0.0) throw DegenerateInput("exp-line needs two distinct points a, b");
    const double side = ux * (params[5] - ay) - uy * (params[4] - ax);
    if (side == 0.0) throw DegenerateInput("exp-line needs c off the line ab");
    const double sign = side > 0 ? 1.0 : -1.0;
    auto f = [=](std::span<const double> x) {
      return std::exp(sign * (ux * (x[1] - ay) - uy * (x[0] - ax)) / len);
    };
    return {f, ConvexSublevels{}, "exp-line"};
  }
  throw ParameterError("unknown function " + std::string(name));
}

std::vector<std::string> builtin_cfunction_names() {
  return {"gauge-box", "sqnorm", "proj-i", "exp-line", "paper-exp-line"};
}

}  // namespace depthlab
