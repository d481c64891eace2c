#include "depthlab/cone.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConeOrder::ConeOrder(Eigen::MatrixXd generators, Eigen::MatrixXd cone_map, bool identity)
    : generators_(std::move(generators)), cone_map_(std::move(cone_map)), identity_(identity) {}

ConeOrder ConeOrder::identity(std::size_t dim) {
  if (dim == 0) throw DimensionError("cone order needs dimension >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  return ConeOrder(Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(n, n), true);
}

ConeOrder ConeOrder::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::MatrixXd g(2, 2);
  g << c, -s, s, c;
  Eigen::MatrixXd t = g.transpose();
  const bool identity = (c == 1.0 && s == 0.0);
  return ConeOrder(std::move(g), std::move(t), identity);
}

ConeOrder::ConeOrder(Eigen::MatrixXd generators) : generators_(std::move(generators)) {
  if (generators_.rows() == 0 || generators_.rows() != generators_.cols())
    throw DegenerateInput("cone generator matrix must be square and non-empty");
  if (!generators_.allFinite()) throw DegenerateInput("cone generators must be finite");
  double scale = 1.0;
  for (Eigen::Index j = 0; j < generators_.cols(); ++j) scale *= generators_.col(j).norm();
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(generators_);
  const double det = lu.determinant();
  if (!(scale > 0.0) || !(std::abs(det) > 1e-9 * scale))
    throw DegenerateInput("cone generator matrix is singular");
  identity_ = true;
  for (Eigen::Index i = 0; i < generators_.rows(); ++i)
    for (Eigen::Index j = 0; j < generators_.cols(); ++j)
      if (generators_(i, j) != (i == j ? 1.0 : 0.0)) identity_ = false;
  const auto n = generators_.rows();
  if (identity_)
    cone_map_ = Eigen::MatrixXd::Identity(n, n);
  else
    cone_map_ = lu.inverse();
}

Vector ConeOrder::to_cone(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionError("point dimension does not match the order");
  if (identity_) return Vector(x.begin(), x.end());
  Vector out(dim(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim(); ++j)
      acc += cone_map_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
    out[i] = acc;
  }
  return out;
}

Vector ConeOrder::from_cone(std::span<const double> c) const {
  if (c.size() != dim()) throw DimensionError("cone coordinates do not match the order");
  if (identity_) return Vector(c.begin(), c.end());
  Vector out(dim(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim(); ++j)
      acc += generators_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * c[j];
    out[i] = acc;
  }
  return out;
}

OrderInterval::OrderInterval(ConeOrder o, Vector lo, Vector hi)
    : order(std::move(o)), lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != order.dim() || upper.size() != order.dim())
    throw DimensionError("interval endpoints do not match the order dimension");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] == kInf || upper[i] == -kInf)
      throw ParameterError("interval endpoints must be reals, -inf below or +inf above");
  }
}

OrderInterval OrderInterval::full(const ConeOrder& order) {
  return OrderInterval(order, Vector(order.dim(), -kInf), Vector(order.dim(), kInf));
}

bool OrderInterval::nonempty() const {
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) return false;
  return true;
}

bool OrderInterval::is_finite() const {
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) return false;
  return true;
}

bool OrderInterval::contains_cone(std::span<const double> c) const {
  if (c.size() != dim()) throw DimensionError("point dimension does not match the interval");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!(lower[i] <= c[i] && c[i] <= upper[i])) return false;
  return true;
}

bool OrderInterval::contains(std::span<const double> x) const {
  const Vector c = order.to_cone(x);
  return contains_cone(c);
}

OrderInterval OrderInterval::intersect(const OrderInterval& other) const {
  if (!(order == other.order)) throw DimensionError("intervals of different orders");
  Vector lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = std::max(lower[i], other.lower[i]);
    hi[i] = std::min(upper[i], other.upper[i]);
  }
  return OrderInterval(order, std::move(lo), std::move(hi));
}

bool OrderInterval::includes(const OrderInterval& other) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (other.lower[i] < lower[i] || other.upper[i] > upper[i]) return false;
  return true;
}

}  // namespace depthlab
