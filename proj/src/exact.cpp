#include "depthlab/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace depthlab {
namespace exact {

namespace {

// Relative error budget of the floating-point evaluations below. The true
// rounding error of every polynomial used here is below 1e-14 of its term
// magnitude, so this leaves a wide margin.
constexpr double kRelativeFilter = 1e-12;
// Below this magnitude subnormal arithmetic voids the relative bound.
constexpr double kTinyMagnitude = 1e-250;

Rational q(double v) { return Rational(v); }

}  // namespace

int sign(const Rational& v) {
  const int s = sgn(v);
  return (s > 0) - (s < 0);
}

int filtered_sign(double value, double magnitude) {
  if (!std::isfinite(value) || !std::isfinite(magnitude) || magnitude < kTinyMagnitude) return 2;
  if (value > kRelativeFilter * magnitude) return 1;
  if (value < -kRelativeFilter * magnitude) return -1;
  return 2;
}

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double t1 = (b.x - a.x) * (c.y - a.y);
  const double t2 = (b.y - a.y) * (c.x - a.x);
  if (const int s = filtered_sign(t1 - t2, std::abs(t1) + std::abs(t2)); s != 2) return s;
  if ((b.x == a.x || c.y == a.y) && (b.y == a.y || c.x == a.x)) return 0;
  return sign((q(b.x) - q(a.x)) * (q(c.y) - q(a.y)) - (q(b.y) - q(a.y)) * (q(c.x) - q(a.x)));
}

int cross_sign(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double t1 = (b.x - a.x) * (d.y - c.y);
  const double t2 = (b.y - a.y) * (d.x - c.x);
  if (const int s = filtered_sign(t1 - t2, std::abs(t1) + std::abs(t2)); s != 2) return s;
  return sign((q(b.x) - q(a.x)) * (q(d.y) - q(c.y)) - (q(b.y) - q(a.y)) * (q(d.x) - q(c.x)));
}

int dot_sign(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double t1 = (b.x - a.x) * (d.x - c.x);
  const double t2 = (b.y - a.y) * (d.y - c.y);
  if (const int s = filtered_sign(t1 + t2, std::abs(t1) + std::abs(t2)); s != 2) return s;
  return sign((q(b.x) - q(a.x)) * (q(d.x) - q(c.x)) + (q(b.y) - q(a.y)) * (q(d.y) - q(c.y)));
}

int dot_sign(std::span<const double> u, std::span<const double> p, std::span<const double> qv) {
  double value = 0.0;
  double magnitude = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u[k] * (p[k] - qv[k]);
    value += t;
    magnitude += std::abs(t);
  }
  if (const int s = filtered_sign(value, magnitude); s != 2) return s;
  Rational acc = 0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += q(u[k]) * (q(p[k]) - q(qv[k]));
  return sign(acc);
}

int affine_sign(std::span<const double> u, std::span<const double> p, double c) {
  double value = -c;
  double magnitude = std::abs(c);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u[k] * p[k];
    value += t;
    magnitude += std::abs(t);
  }
  if (const int s = filtered_sign(value, magnitude); s != 2) return s;
  Rational acc = -q(c);
  for (std::size_t k = 0; k < u.size(); ++k) acc += q(u[k]) * q(p[k]);
  return sign(acc);
}

int orient3d(std::span<const double> a, std::span<const double> b, std::span<const double> c,
             std::span<const double> d) {
  double m[3][3];
  for (int k = 0; k < 3; ++k) {
    m[0][k] = b[k] - a[k];
    m[1][k] = c[k] - a[k];
    m[2][k] = d[k] - a[k];
  }
  const double t1 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  const double t2 = m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
  const double t3 = m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double mag =
      std::abs(m[0][0]) * (std::abs(m[1][1] * m[2][2]) + std::abs(m[1][2] * m[2][1])) +
      std::abs(m[0][1]) * (std::abs(m[1][0] * m[2][2]) + std::abs(m[1][2] * m[2][0])) +
      std::abs(m[0][2]) * (std::abs(m[1][0] * m[2][1]) + std::abs(m[1][1] * m[2][0]));
  if (const int s = filtered_sign(t1 - t2 + t3, mag); s != 2) return s;
  Rational e[3][3];
  for (int k = 0; k < 3; ++k) {
    e[0][k] = q(b[k]) - q(a[k]);
    e[1][k] = q(c[k]) - q(a[k]);
    e[2][k] = q(d[k]) - q(a[k]);
  }
  const Rational det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                       e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                       e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
  return sign(det);
}

int line_side(Point2 anchor, Point2 dir_from, Point2 dir_to, const RationalPoint2& p) {
  return line_side(anchor, dir_from, dir_to, p, p.approx());
}

int line_side(Point2 anchor, Point2 dir_from, Point2 dir_to, const RationalPoint2& p, Point2 pa) {
  const double dx = dir_to.x - dir_from.x;
  const double dy = dir_to.y - dir_from.y;
  const double value = dx * (pa.y - anchor.y) - dy * (pa.x - anchor.x);
  const double mag = (std::abs(dx) + std::abs(dy)) *
                     (std::abs(pa.x) + std::abs(pa.y) + std::abs(anchor.x) + std::abs(anchor.y));
  if (const int s = filtered_sign(value, mag); s != 2) return s;
  const Rational ex = q(dir_to.x) - q(dir_from.x);
  const Rational ey = q(dir_to.y) - q(dir_from.y);
  return sign(ex * (p.y - q(anchor.y)) - ey * (p.x - q(anchor.x)));
}

int orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c) {
  return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

// sign of r^2 - |x - c|^2, exact
int ball_sign(std::span<const double> x, std::span<const double> c, double r) {
  double value = r * r;
  double mag = r * r;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - c[k];
    value -= d * d;
    mag += d * d;
  }
  if (const int s = filtered_sign(value, mag); s != 2) return s;
  mpq_class acc = mpq_class(r) * mpq_class(r);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const mpq_class d = mpq_class(x[k]) - mpq_class(c[k]);
    acc -= d * d;
  }
  return sign(acc);
}

}  // namespace exact

CenteredSet::CenteredSet(std::span<const double> coords, std::size_t dim,
                         std::span<const double> center)
    : coords_(coords), dim_(dim), n_(dim == 0 ? 0 : coords.size() / dim),
      center_d_(center.begin(), center.end()) {
  approx_.resize(n_ * dim_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) approx_[i * dim_ + k] = coords_[i * dim_ + k] - center_d_[k];
}

CenteredSet::CenteredSet(std::span<const double> coords, std::size_t dim,
                         std::span<const Rational> center)
    : coords_(coords), dim_(dim), n_(dim == 0 ? 0 : coords.size() / dim),
      center_q_(center.begin(), center.end()), rational_center_(true) {
  materialize();
  approx_.resize(n_ * dim_);
  for (std::size_t i = 0; i < n_ * dim_; ++i) approx_[i] = exact_[i].get_d();
}

void CenteredSet::materialize() const {
  if (exact_ready_) return;
  exact_.resize(n_ * dim_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Rational c = rational_center_ ? center_q_[k] : Rational(center_d_[k]);
      exact_[i * dim_ + k] = Rational(coords_[i * dim_ + k]) - c;
    }
  }
  exact_ready_ = true;
}

const Rational& CenteredSet::q(std::size_t i, std::size_t axis) const {
  materialize();
  return exact_[i * dim_ + axis];
}

bool CenteredSet::is_zero(std::size_t i) const {
  for (std::size_t k = 0; k < dim_; ++k)
    if (component_sign(i, k) != 0) return false;
  return true;
}

int CenteredSet::component_sign(std::size_t i, std::size_t axis) const {
  if (rational_center_) return exact::sign(q(i, axis));
  // a correctly rounded difference of two doubles keeps the exact sign
  const double v = a(i, axis);
  return (v > 0) - (v < 0);
}

int CenteredSet::cross2(std::size_t i, std::size_t j, std::size_t a0, std::size_t a1) const {
  const double t1 = a(i, a0) * a(j, a1);
  const double t2 = a(i, a1) * a(j, a0);
  if (const int s = exact::filtered_sign(t1 - t2, std::abs(t1) + std::abs(t2)); s != 2) return s;
  if (component_sign(i, a0) * component_sign(j, a1) == 0 &&
      component_sign(i, a1) * component_sign(j, a0) == 0) {
    return 0;
  }
  return exact::sign(q(i, a0) * q(j, a1) - q(i, a1) * q(j, a0));
}

int CenteredSet::det3(std::size_t i, std::size_t j, std::size_t k) const {
  const double t1 = a(i, 0) * (a(j, 1) * a(k, 2) - a(j, 2) * a(k, 1));
  const double t2 = a(i, 1) * (a(j, 0) * a(k, 2) - a(j, 2) * a(k, 0));
  const double t3 = a(i, 2) * (a(j, 0) * a(k, 1) - a(j, 1) * a(k, 0));
  const double mag =
      std::abs(a(i, 0)) * (std::abs(a(j, 1) * a(k, 2)) + std::abs(a(j, 2) * a(k, 1))) +
      std::abs(a(i, 1)) * (std::abs(a(j, 0) * a(k, 2)) + std::abs(a(j, 2) * a(k, 0))) +
      std::abs(a(i, 2)) * (std::abs(a(j, 0) * a(k, 1)) + std::abs(a(j, 1) * a(k, 0)));
  if (const int s = exact::filtered_sign(t1 - t2 + t3, mag); s != 2) return s;
  const Rational det = q(i, 0) * (q(j, 1) * q(k, 2) - q(j, 2) * q(k, 1)) -
                       q(i, 1) * (q(j, 0) * q(k, 2) - q(j, 2) * q(k, 0)) +
                       q(i, 2) * (q(j, 0) * q(k, 1) - q(j, 1) * q(k, 0));
  return exact::sign(det);
}

int CenteredSet::dot(std::size_t i, std::size_t j) const {
  double value = 0.0;
  double mag = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double t = a(i, k) * a(j, k);
    value += t;
    mag += std::abs(t);
  }
  if (const int s = exact::filtered_sign(value, mag); s != 2) return s;
  Rational acc = 0;
  for (std::size_t k = 0; k < dim_; ++k) acc += q(i, k) * q(j, k);
  return exact::sign(acc);
}

}  // namespace depthlab
