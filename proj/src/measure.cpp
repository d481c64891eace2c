#include "depthlab/measure.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depthlab/errors.hpp"
#include "depthlab/exact.hpp"

namespace depthlab {

namespace {

std::vector<double> equal_weights(std::size_t dim, std::size_t coord_count) {
  if (dim == 0) throw DimensionError("sample dimension must be positive");
  return std::vector<double>(coord_count / dim, 1.0);
}

}  // namespace

WeightedSample::WeightedSample(std::size_t dim, std::vector<double> coords,
                               std::span<const double> weights)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw DimensionError("sample dimension must be positive");
  if (coords_.empty() || coords_.size() % dim_ != 0)
    throw DimensionError("coordinate count is not a positive multiple of the dimension");
  if (weights.size() != coords_.size() / dim_)
    throw DimensionError("one weight per point is required");
  for (double v : coords_)
    if (!std::isfinite(v)) throw DegenerateInput("sample coordinates must be finite");
  input_weight_sum_ = 0.0;
  for (double w : weights) input_weight_sum_ += w;
  masses_ = normalize_weights(weights);
}

WeightedSample::WeightedSample(std::size_t dim, std::vector<double> coords)
    : WeightedSample(dim, coords, equal_weights(dim, coords.size())) {}

WeightedSample WeightedSample::from_points(const std::vector<Vector>& points,
                                           std::span<const double> weights) {
  if (points.empty()) throw ParameterError("a sample needs at least one point");
  const std::size_t dim = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("points of different dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  if (weights.empty()) return WeightedSample(dim, std::move(coords));
  return WeightedSample(dim, std::move(coords), weights);
}

WeightedSample WeightedSample::with_coords(std::vector<double> coords, std::size_t dim) const {
  if (dim == 0) dim = dim_;
  if (coords.size() != size() * dim) throw DimensionError("coordinate count differs");
  for (double v : coords)
    if (!std::isfinite(v)) throw DegenerateInput("sample coordinates must be finite");
  WeightedSample out = *this;
  out.dim_ = dim;
  out.coords_ = std::move(coords);
  return out;
}

bool WeightedSample::was_normalized() const { return std::abs(input_weight_sum_ - 1.0) > 1e-12; }

double WeightedSample::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double d = coords_[i * dim_ + k] - coords_[j * dim_ + k];
        s += d * d;
      }
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

bool Halfspace::contains(std::span<const double> x) const {
  if (x.size() != normal.size()) throw DimensionError("point and halfspace dimension differ");
  const int s = exact::affine_sign(normal, x, offset);
  return closed ? s <= 0 : s < 0;
}

Halfspace Halfspace::complement() const {
  Halfspace out{normal, -offset, !closed};
  for (double& u : out.normal) u = -u;
  return out;
}

Halfspace Halfspace::canonical() const {
  double norm = 0.0;
  for (double u : normal) norm += u * u;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw DegenerateInput("halfspace normal must be nonzero");
  Halfspace out{normal, offset / norm, closed};
  for (double& u : out.normal) u /= norm;
  return out;
}

Mass prob_halfspace(const WeightedSample& sample, const Halfspace& h) {
  if (h.dim() != sample.dim()) throw DimensionError("halfspace and sample dimension differ");
  if (std::all_of(h.normal.begin(), h.normal.end(), [](double u) { return u == 0.0; }))
    throw DegenerateInput("halfspace normal must be nonzero");
  Mass total;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (h.contains(sample.point(i))) total += sample.mass(i);
  return total;
}

Mass prob_interval(const WeightedSample& sample, const OrderInterval& j) {
  if (j.dim() != sample.dim()) throw DimensionError("interval and sample dimension differ");
  if (!j.nonempty()) return Mass::zero();
  Mass total;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (j.contains(sample.point(i))) total += sample.mass(i);
  return total;
}

Mass prob_ball(const WeightedSample& sample, std::span<const double> center, double radius) {
  if (center.size() != sample.dim()) throw DimensionError("ball centre dimension differs");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw DegenerateInput("radius must be >= 0");
  Mass total;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (exact::ball_sign(sample.point(i), center, radius) >= 0) total += sample.mass(i);
  return total;
}

QuantilePair quantiles(std::span<const double> values, std::span<const double> weights,
                       double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (values.size() != weights.size()) throw DimensionError("one weight per value is required");
  for (double v : values)
    if (!std::isfinite(v)) throw DegenerateInput("values must be finite");
  const auto masses = normalize_weights(weights);
  return quantiles(values, masses, Mass::threshold(alpha), alpha);
}

QuantilePair quantiles(std::span<const double> values, std::span<const Mass> masses,
                       Mass threshold, double alpha) {
  if (values.empty() || values.size() != masses.size())
    throw DimensionError("quantiles need matching, non-empty values and masses");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });

  QuantilePair out;
  out.alpha = alpha;
  out.q_lo = values[order.back()];
  Mass below;
  for (std::size_t k = 0; k < order.size(); ++k) {
    below += masses[order[k]];
    const bool group_end = k + 1 == order.size() || values[order[k + 1]] != values[order[k]];
    if (group_end && below >= threshold) {
      out.q_lo = values[order[k]];
      break;
    }
  }
  out.q_hi = values[order.front()];
  Mass above;
  for (std::size_t k = order.size(); k-- > 0;) {
    above += masses[order[k]];
    const bool group_end = k == 0 || values[order[k - 1]] != values[order[k]];
    if (group_end && above >= threshold) {
      out.q_hi = values[order[k]];
      break;
    }
  }
  return out;
}

}  // namespace depthlab
