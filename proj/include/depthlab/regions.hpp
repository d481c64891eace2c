#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "depthlab/cone.hpp"
#include "depthlab/depth.hpp"
#include "depthlab/exact.hpp"
#include "depthlab/mass.hpp"
#include "depthlab/measure.hpp"
#include "depthlab/order.hpp"

namespace depthlab {

struct RegionPolytope {
  enum class Kind { Empty, Box, Polygon, FullSpace };

  std::size_t dim = 2;
  Kind kind = Kind::Empty;
  double alpha = 0.0;
  // Box: the order interval, finite endpoints
  std::optional<OrderInterval> box;
  // Polygon: exact vertices, counterclockwise from the lexicographically
  // smallest, collinear vertices removed; `vertices` holds their roundings.
  std::vector<RationalPoint2> exact_vertices;
  std::vector<Point2> vertices;

  bool empty() const { return kind == Kind::Empty; }
  // Exact membership for polygons and boxes.
  bool contains(std::span<const double> x) const;
  // Membership up to Euclidean distance `tol` (polygons), or up to `tol` in
  // cone coordinates (boxes).
  bool contains(std::span<const double> x, double tol) const;

  static RegionPolytope polygon(std::vector<RationalPoint2> points, double alpha);
};

// Box of coordinate quantile pairs in cone coordinates; Empty when some
// coordinate has q_lo > q_hi.
RegionPolytope region_axis(const ConeOrder& order, const WeightedSample& sample, double alpha);

// Planar Tukey region {x : D(x) >= alpha} as an exact convex polygon.
RegionPolytope region_halfspace_2d(const WeightedSample& sample, double alpha);
RegionPolytope region_halfspace_2d(const WeightedSample& sample, Mass level);

struct CenterResult {
  Mass level;  // maximal depth on the exact grid
  double alpha_max = 0.0;
  RegionPolytope region;
};

// Maximal depth and the region where it is attained. Supports HalfspaceAll and
// ConvexCompactComplements for d <= 2 and the interval families in any d.
CenterResult center(const WeightedSample& sample, const DepthFamily& family);

struct BoundCheck {
  Mass level;
  double alpha_max = 0.0;
  double bound = 0.0;  // 1 / (d + 1)
  bool holds = false;
};

// Maximal halfspace depth compared with 1/(d+1). d <= 2 exactly; d = 3 by
// enumerating the vertices of the plane arrangement, n <= 10.
BoundCheck bound_check(const WeightedSample& sample);

// Intersection over the angles of the axis regions of the rotated orders.
// Boxes of non-identity orders are widened by a relative 1e-13 in cone
// coordinates before intersecting.
RegionPolytope rotated_axis_intersection(const WeightedSample& sample,
                                         std::span<const double> angles, double alpha);

struct GridSpec {
  std::size_t nx = 101;
  std::size_t ny = 101;
  // Defaults to the sample bounding box widened by a quarter on every side.
  std::optional<std::array<double, 4>> bounds;  // xmin, xmax, ymin, ymax
};

// Points of a regular grid with depth >= alpha, evaluated pointwise.
std::vector<Point2> region_grid_oracle(const WeightedSample& sample, const DepthFamily& family,
                                       double alpha, const GridSpec& grid = {});

}  // namespace depthlab
