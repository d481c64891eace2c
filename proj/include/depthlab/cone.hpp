#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace depthlab {

using Vector = std::vector<double>;

// Partial order x <= y  <=>  y - x lies in the simplicial cone G * R^d_+.
//
// Cone coordinates of x are T x with T = G^{-1}. All order comparisons are
// made on cone coordinates computed by to_cone(), so every operation in the
// library sees the same coordinates for the same point. For the identity
// order the cone coordinates are the input values themselves.
class ConeOrder {
 public:
  static ConeOrder identity(std::size_t dim);
  // Coordinate-wise order of the 2-D frame whose axes are rotated
  // counterclockwise by `angle` radians: G = R(angle), T = R(-angle).
  static ConeOrder rotation(double angle);

  // Throws DegenerateInput when G is not square or numerically singular.
  explicit ConeOrder(Eigen::MatrixXd generators);

  std::size_t dim() const { return static_cast<std::size_t>(generators_.rows()); }
  const Eigen::MatrixXd& generators() const { return generators_; }
  const Eigen::MatrixXd& cone_map() const { return cone_map_; }
  bool is_identity() const { return identity_; }

  Vector to_cone(std::span<const double> x) const;
  Vector from_cone(std::span<const double> c) const;

  friend bool operator==(const ConeOrder& a, const ConeOrder& b) {
    return a.generators_.rows() == b.generators_.rows() && a.generators_ == b.generators_;
  }

 private:
  ConeOrder(Eigen::MatrixXd generators, Eigen::MatrixXd cone_map, bool identity);

  Eigen::MatrixXd generators_;
  Eigen::MatrixXd cone_map_;
  bool identity_ = false;
};

// Generalized interval [a, b] = {x : a <= T x <= b componentwise}, endpoints
// in cone coordinates; -inf / +inf entries make the bound vacuous.
struct OrderInterval {
  ConeOrder order;
  Vector lower;
  Vector upper;

  OrderInterval(ConeOrder order, Vector lower, Vector upper);
  static OrderInterval full(const ConeOrder& order);

  std::size_t dim() const { return lower.size(); }
  bool nonempty() const;
  bool is_finite() const;
  bool contains(std::span<const double> x) const;
  bool contains_cone(std::span<const double> c) const;
  // Intersection with an interval of the same order.
  OrderInterval intersect(const OrderInterval& other) const;
  // Interval `other` lies inside this one (both nonempty).
  bool includes(const OrderInterval& other) const;

  friend bool operator==(const OrderInterval& a, const OrderInterval& b) {
    return a.order == b.order && a.lower == b.lower && a.upper == b.upper;
  }
};

}  // namespace depthlab
