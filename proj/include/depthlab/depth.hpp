#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "depthlab/cone.hpp"
#include "depthlab/exact.hpp"
#include "depthlab/mass.hpp"
#include "depthlab/measure.hpp"

namespace depthlab {

// Families U of sets whose infimum mass over members containing x defines
// the depth of x.
struct HalfspaceAll {};
struct AxisParallel {
  ConeOrder order;
};
struct IntervalComplements {
  ConeOrder order;
};
struct BallComplements {
  double radius_cap = 1.0;
};
struct ConvexCompactComplements {};

using DepthFamily = std::variant<HalfspaceAll, AxisParallel, IntervalComplements, BallComplements,
                                 ConvexCompactComplements>;

std::string family_name(const DepthFamily& family);

struct DepthValue {
  Mass mass;
  // false for Monte-Carlo and ball searches, which only bound the depth
  bool exact = true;
  DepthFamily family = HalfspaceAll{};

  double value() const { return mass.value(); }
};

// Exact Tukey depth in the plane by an angular sweep around x, O(n log n).
DepthValue halfspace_depth_2d(std::span<const double> x, const WeightedSample& sample);
Mass halfspace_depth_2d(const RationalPoint2& x, const WeightedSample& sample);

// Exact Tukey depth for d <= 3 and n <= 200 by enumerating the vertices of
// the arrangement of critical normals and resolving each vertex with an
// infinitesimal rotation. Throws BudgetExceeded outside that range.
DepthValue halfspace_depth_exact(std::span<const double> x, const WeightedSample& sample);
Mass halfspace_depth_exact(std::span<const Rational> x, const WeightedSample& sample);

// Minimum over `trials` random directions of the closed halfspace mass; an
// upper bound on the Tukey depth, deterministic for a given seed.
DepthValue monte_carlo_depth(std::span<const double> x, const WeightedSample& sample,
                             std::size_t trials, std::uint64_t seed);

// Depth for complements of order intervals, equal to the depth generated by
// the halfspaces tangent to the cone: min over cone axes of the two tail
// masses at x.
DepthValue axis_depth(std::span<const double> x, const WeightedSample& sample,
                      const ConeOrder& order);

// Upper bound on the depth generated by complements of closed balls of radius
// at most `radius_cap`; non-increasing in the cap.
DepthValue ball_depth(std::span<const double> x, const WeightedSample& sample, double radius_cap);

// Independent brute force for the planar Tukey depth, n <= 30.
DepthValue depth_oracle(std::span<const double> x, const WeightedSample& sample);

// Infimum over open halfplanes containing x, evaluated on explicit open
// halfplanes (d = 2).
Mass halfspace_depth_open_2d(std::span<const double> x, const WeightedSample& sample);

DepthValue depth(std::span<const double> x, const WeightedSample& sample,
                 const DepthFamily& family);

}  // namespace depthlab
