#pragma once

#include <algorithm>

#include "walkfit/geometry/polygon.hpp"

namespace walkfit {

// Axis-aligned box; object footprints are always of this form.
struct Box {
  Point2 lo;
  Point2 hi;

  static Box around(Point2 c, double half_x, double half_y) {
    return {{c.x - half_x, c.y - half_y}, {c.x + half_x, c.y + half_y}};
  }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  Point2 center() const { return (lo + hi) * 0.5; }
  bool contains_closed(Point2 p, double tol = 0.0) const {
    return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol;
  }
  SimplePolygon polygon() const { return SimplePolygon::rectangle(lo, hi); }
};

inline double overlap_area(const Box& a, const Box& b) {
  const double w = std::min(a.hi.x, b.hi.x) - std::max(a.lo.x, b.lo.x);
  const double h = std::min(a.hi.y, b.hi.y) - std::max(a.lo.y, b.lo.y);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

// True when the open segment part strictly inside the box (shrunk by tol) is non-empty.
inline bool segment_enters_box(Point2 a, Point2 b, const Box& box, double tol) {
  const Point2 lo{box.lo.x + tol, box.lo.y + tol};
  const Point2 hi{box.hi.x - tol, box.hi.y - tol};
  if (lo.x >= hi.x || lo.y >= hi.y) return false;
  double t0 = 0.0, t1 = 1.0;
  const Point2 d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - lo.x, hi.x - a.x, a.y - lo.y, hi.y - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] <= 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 >= t1) return false;
  }
  return t1 > t0;
}

// Box inside a simple polygon, boundary contact allowed.
inline bool box_inside(const Box& box, const SimplePolygon& poly, double tol = 1e-9) {
  for (Point2 c : {box.lo, Point2{box.hi.x, box.lo.y}, box.hi, Point2{box.lo.x, box.hi.y}})
    if (!poly.contains_closed(c, tol)) return false;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (segment_enters_box(poly.edge_start(i), poly.edge_end(i), box, tol)) return false;
  return true;
}

// Interior overlap of a box with a simple polygon.
inline bool box_overlaps(const Box& box, const SimplePolygon& poly, double tol = 1e-9) {
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (segment_enters_box(poly.edge_start(i), poly.edge_end(i), box, tol)) return true;
  // No edge inside the box: either disjoint, or one contains the other.
  return poly.contains(box.center()) || box.contains_closed(poly[0], -tol);
}

}  // namespace walkfit
