#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace depthlab {

// Probability mass stored as an integer number of ticks out of kTotal.
//
// Every sample is normalized onto this fixed grid at construction, so sums of
// atom masses are exact, associative and independent of summation order. The
// grid total is divisible by every integer up to 16, which keeps equal weights
// for small samples (1/3, 1/4, 1/6, ...) exact.
class Mass {
 public:
  using Ticks = std::int64_t;
  static constexpr Ticks kTotal = Ticks{720720} << 39;

  constexpr Mass() = default;
  constexpr explicit Mass(Ticks ticks) : ticks_(ticks) {}

  static constexpr Mass zero() { return Mass{0}; }
  static constexpr Mass one() { return Mass{kTotal}; }

  // Ticks below a real threshold that still count as reaching it. Absorbs the
  // rounding of decimal weights and of alpha itself (about 2.6e-15), far
  // below any weight a sample can carry meaningfully.
  static constexpr Ticks kThresholdSlack = 1024;

  // Smallest mass that counts as ">= alpha": the exact ceiling of
  // alpha * kTotal less kThresholdSlack, at least one tick. alpha <= 0 maps
  // to zero and alpha > 1 to an unreachable mass.
  static Mass threshold(double alpha);

  constexpr Ticks ticks() const { return ticks_; }
  double value() const;

  constexpr Mass& operator+=(Mass other) {
    ticks_ += other.ticks_;
    return *this;
  }
  constexpr Mass& operator-=(Mass other) {
    ticks_ -= other.ticks_;
    return *this;
  }
  friend constexpr Mass operator+(Mass a, Mass b) { return Mass{a.ticks_ + b.ticks_}; }
  friend constexpr Mass operator-(Mass a, Mass b) { return Mass{a.ticks_ - b.ticks_}; }
  friend constexpr auto operator<=>(Mass, Mass) = default;

 private:
  Ticks ticks_ = 0;
};

// Maps positive finite weights onto ticks summing exactly to Mass::kTotal.
// Uses exact rational arithmetic and largest-remainder rounding; every atom
// receives at least one tick.
std::vector<Mass> normalize_weights(std::span<const double> weights);

}  // namespace depthlab
