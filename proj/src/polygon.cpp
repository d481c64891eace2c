#include "depthlab/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {

bool lex_less(const RationalPoint2& a, const RationalPoint2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

double segment_distance(Point2 a, Point2 b, Point2 p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace

RationalPoint2 intersect(const ClipLine& a, const ClipLine& b) {
  const Rational dx = Rational(a.to.x) - a.from.x, dy = Rational(a.to.y) - a.from.y;
  const Rational ex = Rational(b.to.x) - b.from.x, ey = Rational(b.to.y) - b.from.y;
  const Rational denom = ex * dy - ey * dx;
  if (sgn(denom) == 0) throw DegenerateInput("intersecting parallel lines");
  const Rational wx = Rational(b.anchor.x) - a.anchor.x, wy = Rational(b.anchor.y) - a.anchor.y;
  const Rational t = (ex * wy - ey * wx) / denom;
  return {Rational(a.anchor.x) + t * dx, Rational(a.anchor.y) + t * dy};
}

ClipPolygon ClipPolygon::rectangle(double xmin, double xmax, double ymin, double ymax) {
  if (!(xmin <= xmax) || !(ymin <= ymax)) throw DegenerateInput("rectangle bounds out of order");
  const Point2 c[4] = {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
  const Point2 dir[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  ClipPolygon poly;
  for (int k = 0; k < 4; ++k) {
    const ClipLine line{c[k], {0, 0}, dir[k]};
    const RationalPoint2 p{Rational(c[k].x), Rational(c[k].y)};
    if (!poly.ring_.empty() && poly.ring_.back().p == p) {
      poly.ring_.back().out = line;
      continue;
    }
    poly.ring_.push_back({p, c[k], line});
  }
  while (poly.ring_.size() > 1 && poly.ring_.back().p == poly.ring_.front().p) poly.ring_.pop_back();
  poly.sync();
  return poly;
}

void ClipPolygon::clip(const ClipLine& line) {
  const std::size_t n = ring_.size();
  if (n == 0) return;
  std::vector<int> side(n);
  bool all_in = true, any_in = false;
  for (std::size_t i = 0; i < n; ++i) {
    side[i] = line.side(ring_[i].p, ring_[i].approx);
    all_in = all_in && side[i] >= 0;
    any_in = any_in || side[i] >= 0;
  }
  if (all_in) return;
  if (!any_in) {
    ring_.clear();
    sync();
    return;
  }

  std::vector<Vertex> out;
  auto push = [&out](Vertex v) {
    if (!out.empty() && out.back().p == v.p) {
      out.back().out = v.out;
      return;
    }
    out.push_back(std::move(v));
  };
  auto crossing = [&line](const Vertex& a, const ClipLine& keep) {
    RationalPoint2 p = intersect(a.out, line);
    const Point2 approx = p.approx();
    return Vertex{std::move(p), approx, keep};
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& a = ring_[i];
    const int s = side[i], t = side[(i + 1) % n];
    if (s >= 0) {
      if (t >= 0) {
        push(a);
      } else if (s > 0) {
        push(a);
        push(crossing(a, line));
      } else {
        push({a.p, a.approx, line});
      }
    } else if (t > 0) {
      push(crossing(a, a.out));
    }
  }
  while (out.size() > 1 && out.back().p == out.front().p) out.pop_back();
  ring_ = std::move(out);
  sync();
}

void ClipPolygon::sync() {
  vertices_.clear();
  for (const auto& v : ring_) vertices_.push_back(v.p);
}

std::vector<RationalPoint2> convex_hull(std::vector<RationalPoint2> points) {
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return points;
  std::vector<RationalPoint2> hull;
  auto chain = [&hull](auto begin, auto end) {
    const std::size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= base + 2 &&
             exact::orient2d(hull[hull.size() - 2], hull.back(), *it) <= 0)
        hull.pop_back();
      hull.push_back(*it);
    }
    hull.pop_back();
  };
  chain(points.begin(), points.end());
  chain(points.rbegin(), points.rend());
  return hull;
}

bool hull_contains(std::span<const RationalPoint2> hull, const RationalPoint2& p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0] == p;
  if (hull.size() == 2) {
    return exact::orient2d(hull[0], hull[1], p) == 0 && !lex_less(p, hull[0]) &&
           !lex_less(hull[1], p);
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (exact::orient2d(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

double hull_distance(std::span<const Point2> hull, Point2 p) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return std::hypot(p.x - hull[0].x, p.y - hull[0].y);
  bool inside = hull.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i], b = hull[(i + 1) % hull.size()];
    if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0) inside = false;
    best = std::min(best, segment_distance(a, b, p));
  }
  return inside ? 0.0 : best;
}

}  // namespace depthlab
