#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walkfit/error.hpp"
#include "walkfit/geometry/point.hpp"

namespace walkfit {

// Signed shoelace area; positive for counter-clockwise rings.
inline double signed_area(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * twice;
}

inline bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

// A simple (non-self-intersecting) counter-clockwise polygon with positive area.
class SimplePolygon {
 public:
  SimplePolygon() = default;

  // Validates and normalizes orientation to counter-clockwise.
  static SimplePolygon from(std::vector<Point2> vertices) {
    if (vertices.size() >= 2 && vertices.front() == vertices.back()) vertices.pop_back();
    if (vertices.size() < 3)
      throw InvalidGeometry("polygon needs at least 3 vertices, got " +
                            std::to_string(vertices.size()));
    for (const Point2& p : vertices)
      if (!is_finite(p)) throw InvalidGeometry("non-finite vertex coordinate");
    const double a = signed_area(vertices);
    if (!(std::abs(a) > 0.0)) throw InvalidGeometry("polygon has zero area");
    if (a < 0.0) std::reverse(vertices.begin(), vertices.end());
    SimplePolygon poly(std::move(vertices));
    if (poly.self_intersects()) throw InvalidGeometry("polygon is self-intersecting");
    return poly;
  }

  // For vertex lists produced by this library that are already known to be valid CCW rings.
  static SimplePolygon unchecked(std::vector<Point2> vertices) {
    return SimplePolygon(std::move(vertices));
  }

  static SimplePolygon rectangle(Point2 lo, Point2 hi) {
    return from({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
  }

  static SimplePolygon square(Point2 center, double half_extent) {
    return rectangle(center - Point2{half_extent, half_extent},
                     center + Point2{half_extent, half_extent});
  }

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point2 operator[](std::size_t i) const { return vertices_[i]; }
  Point2 edge_start(std::size_t i) const { return vertices_[i]; }
  Point2 edge_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  double area() const { return signed_area(vertices_); }

  Point2 centroid() const {
    double a = 0.0;
    Point2 c{};
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 p = vertices_[i];
      const Point2 q = vertices_[(i + 1) % n];
      const double w = cross(p, q);
      a += w;
      c += (p + q) * w;
    }
    return c / (3.0 * a);
  }

  std::pair<Point2, Point2> bounds() const {
    Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point2 hi = -lo;
    for (const Point2& p : vertices_) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return {lo, hi};
  }

  bool self_intersects() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (j == i + 1 || (i == 0 && j == n - 1)) continue;
        if (segments_intersect(edge_start(i), edge_end(i), edge_start(j), edge_end(j)))
          return true;
      }
    }
    return false;
  }

  double distance_to_boundary(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      d = std::min(d, distance_to_segment(p, edge_start(i), edge_end(i)));
    return d;
  }

  // Even-odd crossing test; points on the boundary may go either way, callers that care use
  // distance_to_boundary.
  bool contains(Point2 p) const {
    bool inside = false;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point2 a = vertices_[i];
      const Point2 b = vertices_[j];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (p.x < x) inside = !inside;
      }
    }
    return inside;
  }

  // Closed-region membership: interior or within `tol` of the boundary.
  bool contains_closed(Point2 p, double tol = 1e-9) const {
    return contains(p) || distance_to_boundary(p) <= tol;
  }

  SimplePolygon translated(Point2 delta) const {
    std::vector<Point2> v = vertices_;
    for (Point2& p : v) p += delta;
    return SimplePolygon(std::move(v));
  }

  SimplePolygon rotated_about(Point2 center, double angle) const {
    std::vector<Point2> v = vertices_;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (Point2& p : v) {
      const Point2 d = p - center;
      p = center + Point2{c * d.x - s * d.y, s * d.x + c * d.y};
    }
    return SimplePolygon(std::move(v));
  }

  friend bool operator==(const SimplePolygon&, const SimplePolygon&) = default;

 private:
  explicit SimplePolygon(std::vector<Point2> v) : vertices_(std::move(v)) {}
  std::vector<Point2> vertices_;
};

inline SimplePolygon translate(const SimplePolygon& p, Point2 delta) { return p.translated(delta); }
inline SimplePolygon rotate_about(const SimplePolygon& p, Point2 center, double angle) {
  return p.rotated_about(center, angle);
}

struct PolygonWithHoles {
  SimplePolygon outer;
  std::vector<SimplePolygon> holes;

  double area() const {
    double a = outer.area();
    for (const SimplePolygon& h : holes) a -= h.area();
    return a;
  }

  bool contains(Point2 p) const {
    if (!outer.contains(p)) return false;
    for (const SimplePolygon& h : holes)
      if (h.contains(p)) return false;
    return true;
  }

  double distance_to_boundary(Point2 p) const {
    double d = outer.distance_to_boundary(p);
    for (const SimplePolygon& h : holes) d = std::min(d, h.distance_to_boundary(p));
    return d;
  }
};

// Result type of boolean operations: interior-disjoint parts, each possibly with holes.
struct PolygonSet {
  std::vector<PolygonWithHoles> parts;

  PolygonSet() = default;
  PolygonSet(const SimplePolygon& p) { parts.push_back({p, {}}); }  // NOLINT: implicit by intent
  explicit PolygonSet(std::vector<PolygonWithHoles> ps) : parts(std::move(ps)) {}

  bool empty() const { return parts.empty(); }

  double area() const {
    double a = 0.0;
    for (const PolygonWithHoles& p : parts) a += p.area();
    return a;
  }

  bool contains(Point2 p) const {
    return std::any_of(parts.begin(), parts.end(),
                       [&](const PolygonWithHoles& part) { return part.contains(p); });
  }

  double distance_to_boundary(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const PolygonWithHoles& part : parts) d = std::min(d, part.distance_to_boundary(p));
    return d;
  }

  // Every ring, outer rings counter-clockwise and holes clockwise, so the region lies to the
  // left of each directed edge.
  std::vector<std::vector<Point2>> oriented_rings() const {
    std::vector<std::vector<Point2>> rings;
    for (const PolygonWithHoles& part : parts) {
      rings.push_back(part.outer.vertices());
      for (const SimplePolygon& h : part.holes) {
        std::vector<Point2> r = h.vertices();
        std::reverse(r.begin(), r.end());
        rings.push_back(std::move(r));
      }
    }
    return rings;
  }
};

inline PolygonSet translate(const PolygonSet& s, Point2 delta) {
  PolygonSet out = s;
  for (PolygonWithHoles& part : out.parts) {
    part.outer = part.outer.translated(delta);
    for (SimplePolygon& h : part.holes) h = h.translated(delta);
  }
  return out;
}

inline PolygonSet rotate_about(const PolygonSet& s, Point2 center, double angle) {
  PolygonSet out = s;
  for (PolygonWithHoles& part : out.parts) {
    part.outer = part.outer.rotated_about(center, angle);
    for (SimplePolygon& h : part.holes) h = h.rotated_about(center, angle);
  }
  return out;
}

inline double polygon_area(const SimplePolygon& p) {
  if (p.size() < 3) throw InvalidGeometry("degenerate polygon with fewer than 3 vertices");
  return std::abs(p.area());
}

inline double polygon_area(const PolygonSet& p) {
  for (const PolygonWithHoles& part : p.parts)
    if (part.outer.size() < 3) throw InvalidGeometry("degenerate polygon with fewer than 3 vertices");
  return std::max(0.0, p.area());
}

}  // namespace walkfit
