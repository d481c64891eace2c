#include "depthlab/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kOracleMaxPoints = 30;
constexpr double kOracleMaxIntervals = 2e7;

void check_dims(const ConeOrder& order, const WeightedSample& sample) {
  if (order.dim() != sample.dim()) throw DimensionError("order and sample dimension differ");
}

// Maps cone coordinates back to the ambient space, then pushes the result
// along the generators by a few ulps until its recomputed cone coordinates
// are on the requested side (dir = +1: above, -1: below) of `target`.
Vector pull_back(const ConeOrder& order, const Vector& target, int dir) {
  Vector x = order.from_cone(target);
  if (order.is_identity()) return x;
  for (int round = 0; round < 64; ++round) {
    const Vector c = order.to_cone(x);
    Vector step(c.size(), 0.0);
    bool done = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (dir * (c[i] - target[i]) >= 0.0) continue;
      done = false;
      const double scale = std::max({std::abs(target[i]), std::abs(c[i]), 1e-300});
      step[i] = dir * std::ldexp(scale, round - 50);
    }
    if (done) break;
    const Vector dx = order.from_cone(step);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += dx[k];
  }
  return x;
}

}  // namespace

bool leq(const ConeOrder& order, std::span<const double> x, std::span<const double> y) {
  if (x.size() != order.dim() || y.size() != order.dim())
    throw DimensionError("point dimension does not match the order");
  const Vector cx = order.to_cone(x);
  const Vector cy = order.to_cone(y);
  for (std::size_t i = 0; i < cx.size(); ++i)
    if (!(cx[i] <= cy[i])) return false;
  return true;
}

OrderBounds sup_inf(const ConeOrder& order, const std::vector<Vector>& points) {
  if (points.empty()) throw ParameterError("sup/inf of an empty set");
  OrderBounds out;
  out.sup_cone.assign(order.dim(), -kInf);
  out.inf_cone.assign(order.dim(), kInf);
  for (const auto& p : points) {
    const Vector c = order.to_cone(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.sup_cone[i] = std::max(out.sup_cone[i], c[i]);
      out.inf_cone[i] = std::min(out.inf_cone[i], c[i]);
    }
  }
  out.sup = pull_back(order, out.sup_cone, 1);
  out.inf = pull_back(order, out.inf_cone, -1);
  return out;
}

std::vector<double> cone_projection(const ConeOrder& order, const WeightedSample& sample,
                                    std::size_t axis) {
  check_dims(order, sample);
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) out[i] = order.to_cone(sample.point(i))[axis];
  return out;
}

OrderInterval median_set(const ConeOrder& order, const WeightedSample& sample) {
  check_dims(order, sample);
  const Mass half = Mass::threshold(0.5);
  Vector lo(order.dim()), hi(order.dim());
  for (std::size_t i = 0; i < order.dim(); ++i) {
    const auto values = cone_projection(order, sample, i);
    const QuantilePair q = quantiles(values, sample.masses(), half, 0.5);
    lo[i] = q.q_lo;
    hi[i] = q.q_hi;
  }
  return OrderInterval(order, std::move(lo), std::move(hi));
}

OrderInterval median_set_oracle(const ConeOrder& order, const WeightedSample& sample) {
  check_dims(order, sample);
  if (sample.size() > kOracleMaxPoints)
    throw BudgetExceeded("median_set_oracle is limited to 30 points");
  const std::size_t d = order.dim();
  const std::size_t n = sample.size();

  // distinct projection values per axis and the rank of every point
  std::vector<std::vector<double>> levels(d);
  std::vector<std::vector<std::size_t>> rank(d, std::vector<std::size_t>(n));
  double combos = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto values = cone_projection(order, sample, i);
    levels[i] = values;
    std::sort(levels[i].begin(), levels[i].end());
    levels[i].erase(std::unique(levels[i].begin(), levels[i].end()), levels[i].end());
    for (std::size_t p = 0; p < n; ++p)
      rank[i][p] = static_cast<std::size_t>(
          std::lower_bound(levels[i].begin(), levels[i].end(), values[p]) - levels[i].begin());
    const double m = static_cast<double>(levels[i].size()) + 1.0;
    combos *= m * m;
  }
  if (combos > kOracleMaxIntervals) throw BudgetExceeded("median_set_oracle: too many intervals");

  // d-dimensional prefix sums of the mass on the rank grid (shifted by one)
  std::vector<std::size_t> extent(d), stride(d);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    extent[i] = levels[i].size() + 1;
    stride[i] = cells;
    cells *= extent[i];
  }
  std::vector<Mass::Ticks> prefix(cells, 0);
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) idx += (rank[i][p] + 1) * stride[i];
    prefix[idx] += sample.mass(p).ticks();
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t idx = 0; idx < cells; ++idx)
      if ((idx / stride[i]) % extent[i] > 0) prefix[idx] += prefix[idx - stride[i]];

  // mass of the rank box [lo_r, hi_r) per axis via inclusion-exclusion
  auto box_mass = [&](const std::vector<std::size_t>& lo_r, const std::vector<std::size_t>& hi_r) {
    Mass::Ticks total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::size_t idx = 0;
      int parity = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (mask & (std::size_t{1} << i)) {
          idx += lo_r[i] * stride[i];
          ++parity;
        } else {
          idx += hi_r[i] * stride[i];
        }
      }
      total += (parity % 2 == 0) ? prefix[idx] : -prefix[idx];
    }
    return total;
  };

  // per axis: lower choice a in [0, m] (0 = -inf, k = levels[k-1]),
  //           upper choice b in [0, m] (m = +inf, k < m = levels[k])
  Vector best_lo(d, -kInf), best_hi(d, kInf);
  std::vector<std::size_t> choice_lo(d, 0), choice_hi(d, 0), lo_r(d), hi_r(d);
  // P(J) > 1/2 is the complement of a tail reaching 1/2
  const Mass::Ticks half = Mass::kTotal - Mass::threshold(0.5).ticks();
  for (;;) {
    bool empty = false;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t m = levels[i].size();
      lo_r[i] = choice_lo[i] == 0 ? 0 : choice_lo[i] - 1;
      hi_r[i] = choice_hi[i] == m ? m : choice_hi[i] + 1;
      if (lo_r[i] >= hi_r[i]) empty = true;
    }
    if (!empty && box_mass(lo_r, hi_r) > half) {
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t m = levels[i].size();
        const double a = choice_lo[i] == 0 ? -kInf : levels[i][choice_lo[i] - 1];
        const double b = choice_hi[i] == m ? kInf : levels[i][choice_hi[i]];
        best_lo[i] = std::max(best_lo[i], a);
        best_hi[i] = std::min(best_hi[i], b);
      }
    }
    // odometer over all 2d choices
    std::size_t i = 0;
    for (; i < 2 * d; ++i) {
      auto& digit = (i % 2 == 0) ? choice_lo[i / 2] : choice_hi[i / 2];
      if (++digit <= levels[i / 2].size()) break;
      digit = 0;
    }
    if (i == 2 * d) break;
  }
  return OrderInterval(order, std::move(best_lo), std::move(best_hi));
}

}  // namespace depthlab
