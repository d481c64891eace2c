#pragma once

// Exact geometric predicates on double-precision input.
//
// Every predicate first evaluates its polynomial in floating point together
// with the sum of absolute values of its terms. When the result is not
// clearly separated from zero it is recomputed with GMP rationals, so the
// returned sign is always the sign of the exact real expression.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace depthlab {

using Rational = mpq_class;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct RationalPoint2 {
  Rational x;
  Rational y;
  Point2 approx() const { return {x.get_d(), y.get_d()}; }
  friend bool operator==(const RationalPoint2& a, const RationalPoint2& b) {
    return a.x == b.x && a.y == b.y;
  }
};

namespace exact {

int sign(const Rational& q);

// Returns -1, 0 or +1 when |value| is safely above the rounding error implied
// by `magnitude`, and 2 when the caller must fall back to exact arithmetic.
int filtered_sign(double value, double magnitude);

// sign of cross(b - a, c - a)
int orient2d(Point2 a, Point2 b, Point2 c);
// sign of cross(b - a, d - c)
int cross_sign(Point2 a, Point2 b, Point2 c, Point2 d);
// sign of (b - a) . (d - c)
int dot_sign(Point2 a, Point2 b, Point2 c, Point2 d);
// sign of u . (p - q)
int dot_sign(std::span<const double> u, std::span<const double> p, std::span<const double> q);
// sign of u . p - c
int affine_sign(std::span<const double> u, std::span<const double> p, double c);
// sign of det(b - a, c - a, d - a) for 3-vectors
int orient3d(std::span<const double> a, std::span<const double> b, std::span<const double> c,
             std::span<const double> d);
// sign of r^2 - |x - c|^2
int ball_sign(std::span<const double> x, std::span<const double> c, double r);
// sign of cross(dir_to - dir_from, p - anchor) for a rational point p
int line_side(Point2 anchor, Point2 dir_from, Point2 dir_to, const RationalPoint2& p);
// Same with a caller-supplied rounding of p (any nearest-double rounding).
int line_side(Point2 anchor, Point2 dir_from, Point2 dir_to, const RationalPoint2& p, Point2 approx);
// sign of cross(b - a, c - a) for rational points
int orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c);

}  // namespace exact

// The vectors p_i - x for a fixed centre x, with exact sign predicates on
// them. The centre is either a double vector or a rational vector; in both
// cases the predicates are exact. Not thread-safe: the exact differences are
// materialized lazily on first use.
class CenteredSet {
 public:
  CenteredSet(std::span<const double> coords, std::size_t dim, std::span<const double> center);
  CenteredSet(std::span<const double> coords, std::size_t dim, std::span<const Rational> center);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

  bool is_zero(std::size_t i) const;
  int component_sign(std::size_t i, std::size_t axis) const;
  // sign of v_i[a0] v_j[a1] - v_i[a1] v_j[a0]
  int cross2(std::size_t i, std::size_t j, std::size_t a0 = 0, std::size_t a1 = 1) const;
  // sign of det(v_i, v_j, v_k), dim == 3
  int det3(std::size_t i, std::size_t j, std::size_t k) const;
  // sign of v_i . v_j
  int dot(std::size_t i, std::size_t j) const;

 private:
  const Rational& q(std::size_t i, std::size_t axis) const;
  double a(std::size_t i, std::size_t axis) const { return approx_[i * dim_ + axis]; }
  void materialize() const;

  std::span<const double> coords_;
  std::size_t dim_;
  std::size_t n_;
  std::vector<double> approx_;
  std::vector<double> center_d_;
  std::vector<Rational> center_q_;
  bool rational_center_ = false;
  mutable std::vector<Rational> exact_;
  mutable bool exact_ready_ = false;
};

}  // namespace depthlab
