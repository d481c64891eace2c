#pragma once

#include <span>
#include <vector>

#include "depthlab/exact.hpp"

namespace depthlab {

// Directed line through `anchor` parallel to `to - from`. The kept side of a
// clip is the closed left side, cross(to - from, p - anchor) >= 0. All three
// points are doubles, so intersections of two such lines have small exact
// rational coordinates.
struct ClipLine {
  Point2 anchor;
  Point2 from;
  Point2 to;

  int side(const RationalPoint2& p, Point2 approx) const {
    return exact::line_side(anchor, from, to, p, approx);
  }
};

RationalPoint2 intersect(const ClipLine& a, const ClipLine& b);

// Closed convex polygon stored counterclockwise with the supporting line of
// each outgoing edge. Points and segments are valid degenerate polygons.
class ClipPolygon {
 public:
  // Axis-parallel rectangle, xmin <= xmax and ymin <= ymax.
  static ClipPolygon rectangle(double xmin, double xmax, double ymin, double ymax);

  // Intersect with the closed left side of `line`.
  void clip(const ClipLine& line);

  bool empty() const { return vertices_.empty(); }
  const std::vector<RationalPoint2>& vertices() const { return vertices_; }

 private:
  struct Vertex {
    RationalPoint2 p;
    Point2 approx;
    ClipLine out;  // line of the edge leaving this vertex
  };
  std::vector<RationalPoint2> vertices_;
  std::vector<Vertex> ring_;

  void sync();
};

// Convex hull with collinear points removed, counterclockwise, starting at the
// lexicographically smallest vertex.
std::vector<RationalPoint2> convex_hull(std::vector<RationalPoint2> points);

// Point-in-convex-hull test against exact vertices (as returned by
// convex_hull); boundary points count as inside.
bool hull_contains(std::span<const RationalPoint2> hull, const RationalPoint2& p);

// Euclidean distance from p to the hull, in doubles.
double hull_distance(std::span<const Point2> hull, Point2 p);

}  // namespace depthlab
