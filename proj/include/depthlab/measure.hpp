#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "depthlab/cone.hpp"
#include "depthlab/mass.hpp"

namespace depthlab {

// Finitely supported probability measure on R^d. Points are stored row-major;
// weights are normalized onto the exact Mass grid at construction.
class WeightedSample {
 public:
  WeightedSample(std::size_t dim, std::vector<double> coords, std::span<const double> weights);
  // Equal weights.
  WeightedSample(std::size_t dim, std::vector<double> coords);

  static WeightedSample from_points(const std::vector<Vector>& points,
                                    std::span<const double> weights = {});

  // Same masses at new coordinates; `dim` = 0 keeps the current dimension.
  WeightedSample with_coords(std::vector<double> coords, std::size_t dim = 0) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return masses_.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const { return coords_; }
  Mass mass(std::size_t i) const { return masses_[i]; }
  double weight(std::size_t i) const { return masses_[i].value(); }
  std::span<const Mass> masses() const { return masses_; }

  // Sum of the weights as supplied, before normalization.
  double input_weight_sum() const { return input_weight_sum_; }
  // True when the supplied weights did not already sum to one (1e-12).
  bool was_normalized() const;

  // Euclidean diameter of the support.
  double diameter() const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<Mass> masses_;
  double input_weight_sum_ = 0.0;
};

// {x : u.x <= c} when closed, {x : u.x < c} otherwise.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
  bool closed = true;

  std::size_t dim() const { return normal.size(); }
  // Exact membership test on the inner product.
  bool contains(std::span<const double> x) const;
  // Set complement, which flips closedness.
  Halfspace complement() const;
  // Same set (up to rounding of the offset) with a unit normal.
  Halfspace canonical() const;
};

struct QuantilePair {
  double q_lo = 0.0;  // smallest alpha-quantile
  double q_hi = 0.0;  // largest (1 - alpha)-quantile
  double alpha = 0.0;
};

Mass prob_halfspace(const WeightedSample& sample, const Halfspace& h);
Mass prob_interval(const WeightedSample& sample, const OrderInterval& j);
Mass prob_ball(const WeightedSample& sample, std::span<const double> center, double radius);

// q_lo = inf{t : P(X <= t) >= alpha}, q_hi = sup{t : P(X >= t) >= alpha}.
QuantilePair quantiles(std::span<const double> values, std::span<const double> weights,
                       double alpha);
// Same on exact masses; `threshold` is the mass counterpart of alpha.
QuantilePair quantiles(std::span<const double> values, std::span<const Mass> masses,
                       Mass threshold, double alpha);

}  // namespace depthlab
