#pragma once

#include <span>
#include <vector>

#include "depthlab/cone.hpp"
#include "depthlab/measure.hpp"

namespace depthlab {

// x <= y under the cone order: T x <= T y componentwise, compared exactly on
// the computed cone coordinates.
bool leq(const ConeOrder& order, std::span<const double> x, std::span<const double> y);

struct OrderBounds {
  Vector sup;
  Vector inf;
  Vector sup_cone;
  Vector inf_cone;
};

// Least upper and greatest lower bound of a finite, non-empty point set.
OrderBounds sup_inf(const ConeOrder& order, const std::vector<Vector>& points);

// Coordinate `axis` of T p for every sample point p.
std::vector<double> cone_projection(const ConeOrder& order, const WeightedSample& sample,
                                    std::size_t axis);

// Intersection of all order intervals of mass > 1/2, computed as the product
// of the coordinate median intervals in cone coordinates.
OrderInterval median_set(const ConeOrder& order, const WeightedSample& sample);

// Brute-force counterpart of median_set: intersects every candidate interval
// with endpoints drawn from the sample projections (or infinite) and mass
// > 1/2. Limited to n <= 30 and about 2e7 candidate intervals.
OrderInterval median_set_oracle(const ConeOrder& order, const WeightedSample& sample);

}  // namespace depthlab
