#pragma once

// Brute-force references used only by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "depthlab/cone.hpp"
#include "depthlab/measure.hpp"

namespace depthlab::testing {

// Depth for complements of closed order intervals: 1 - max P(J) over
// intervals J that miss x, with endpoints drawn from the cone coordinates of
// the sample (or infinite). Exponential in the dimension; small n only.
inline Mass interval_complement_depth(std::span<const double> x, const WeightedSample& s,
                                      const ConeOrder& order) {
  const std::size_t d = s.dim(), n = s.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Vector> cone(n);
  for (std::size_t i = 0; i < n; ++i) cone[i] = order.to_cone(s.point(i));
  const Vector cx = order.to_cone(x);

  std::vector<std::vector<double>> lows(d), highs(d);
  for (std::size_t a = 0; a < d; ++a) {
    lows[a].push_back(-inf);
    highs[a].push_back(inf);
    for (std::size_t i = 0; i < n; ++i) {
      lows[a].push_back(cone[i][a]);
      highs[a].push_back(cone[i][a]);
    }
  }
  Mass heaviest;
  std::vector<std::size_t> li(d, 0), hi(d, 0);
  while (true) {
    bool misses = false;
    for (std::size_t a = 0; a < d; ++a)
      if (cx[a] < lows[a][li[a]] || cx[a] > highs[a][hi[a]]) misses = true;
    if (misses) {
      Mass m;
      for (std::size_t i = 0; i < n; ++i) {
        bool in = true;
        for (std::size_t a = 0; a < d; ++a)
          in = in && lows[a][li[a]] <= cone[i][a] && cone[i][a] <= highs[a][hi[a]];
        if (in) m += s.mass(i);
      }
      heaviest = std::max(heaviest, m);
    }
    std::size_t a = 0;
    for (; a < d; ++a) {
      if (++li[a] < lows[a].size()) break;
      li[a] = 0;
      if (++hi[a] < highs[a].size()) break;
      hi[a] = 0;
    }
    if (a == d) break;
  }
  return Mass::one() - heaviest;
}

// Depth for the family of translated and rotated closed 45-degree wedges
// (non-convex complements). Only wedges with apex at x are tried, which is
// enough to reach the atom mass at x.
inline Mass wedge_depth(std::span<const double> x, const WeightedSample& s) {
  const double pi = std::numbers::pi;
  const double opening = pi / 4;
  Mass at_x;
  std::vector<double> angles;
  std::vector<Mass> masses;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double dx = s.point(i)[0] - x[0], dy = s.point(i)[1] - x[1];
    if (dx == 0.0 && dy == 0.0) {
      at_x += s.mass(i);
      continue;
    }
    angles.push_back(std::atan2(dy, dx));
    masses.push_back(s.mass(i));
  }
  if (angles.empty()) return at_x;

  auto in_wedge = [&](double theta, double a) {
    double t = std::fmod(a - theta, 2 * pi);
    if (t < 0) t += 2 * pi;
    return t <= opening + 1e-12;
  };
  std::vector<double> starts;
  for (double a : angles) {
    starts.push_back(a);
    starts.push_back(a - opening);
  }
  std::sort(starts.begin(), starts.end());
  const std::size_t k = starts.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double next = i + 1 < k ? starts[i + 1] : starts[0] + 2 * pi;
    starts.push_back(0.5 * (starts[i] + next));
  }
  Mass best = Mass::one();
  for (double theta : starts) {
    Mass m = at_x;
    for (std::size_t i = 0; i < angles.size(); ++i)
      if (in_wedge(theta, angles[i])) m += masses[i];
    best = std::min(best, m);
  }
  return best;
}

// The six-atom configuration of the wedge counterexample.
inline WeightedSample six_atoms() {
  return WeightedSample(2, {1, 0, -1, 0, 2, 0, -2, 0, 0, 1, 0, -1});
}

}  // namespace depthlab::testing
