#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "depthlab/cone.hpp"
#include "depthlab/depth.hpp"
#include "depthlab/measure.hpp"
#include "depthlab/regions.hpp"

namespace depthlab {

// Every nonempty sublevel set {f <= t} is an order interval.
struct IntervalSublevels {
  ConeOrder order;
};

// Quasi-convex and lower semicontinuous.
struct ConvexSublevels {};

using SublevelFamily = std::variant<IntervalSublevels, ConvexSublevels>;

// Evaluators must be pure: results are never cached, and grid sweeps may
// visit points in any order.
using Evaluator = std::function<double(std::span<const double>)>;

struct CFunctionSpec {
  Evaluator evaluator;
  SublevelFamily family;
  std::string label;

  double operator()(std::span<const double> x) const { return evaluator(x); }
};

struct ProbeGrid {
  std::size_t per_axis = 24;
  // Per-axis resolution is reduced until the grid has at most this many points.
  std::size_t max_points = 1u << 14;
  // Random segment triples for the quasi-convexity test.
  std::size_t triples = 4000;
  std::uint64_t seed = 0;
};

struct CFunctionCheck {
  bool ok = true;
  // First violating point and the level (or max(f(x), f(y)) for the convex
  // test) it exceeds.
  Vector witness;
  double level = 0.0;
  double value = 0.0;

  explicit operator bool() const { return ok; }
};

// Grid test of the sublevel-set property over a finite probe box. With no
// levels given, levels are taken from the grid values themselves. Values are
// compared with a relative slack of 1e-12 to absorb evaluator rounding.
CFunctionCheck check_cfunction(const CFunctionSpec& f, const OrderInterval& probe_box,
                               const ProbeGrid& grid = {}, std::span<const double> levels = {});

// Median interval of f(X) at alpha = 1/2.
QuantilePair pushforward_medians(const CFunctionSpec& f, const WeightedSample& sample);

struct JensenMedian {
  Vector m_star;
  double f_m = 0.0;
  QuantilePair medians;
  OrderInterval median_box;
  bool holds = false;
};

// Minimizes f over the median box (grid of `per_axis` points per axis plus
// the box corners) and compares with the lower median of f(X).
JensenMedian jensen_median(const ConeOrder& order, const CFunctionSpec& f,
                           const WeightedSample& sample, std::size_t per_axis = 64);

struct JensenGeneral {
  double alpha_max = 0.0;
  double q = 0.0;  // largest (1 - alpha_max)-quantile of f(X)
  double worst_gap = 0.0;
  double f_max = 0.0;
  Vector argmax;
  std::size_t evaluated = 0;
  RegionPolytope region;
  bool holds = false;
};

// Maximizes f over the center of `family` (vertices, edges and a grid of
// `per_axis` points per axis) and compares with the upper quantile at the
// maximal depth.
JensenGeneral jensen_general(const DepthFamily& family, const CFunctionSpec& f,
                             const WeightedSample& sample, std::size_t per_axis = 64);

// Named functions for the command line:
//   gauge-box  params a_1..a_d, b_1..b_d   max_i |y_i - a_i| - |y_i - b_i|, y = T x
//   sqnorm     no params                   |x|^2
//   proj-i     params i (0-based)          y_i, y = T x
//   exp-line   params a, b, c in the plane exp of the signed distance to the
//              line ab, positive on the side of c ("paper-exp-line" is an alias)
CFunctionSpec builtin_cfunction(std::string_view name, std::span<const double> params,
                                const ConeOrder& order);

std::vector<std::string> builtin_cfunction_names();

}  // namespace depthlab
