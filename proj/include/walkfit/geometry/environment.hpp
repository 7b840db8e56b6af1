#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "walkfit/geometry/boolean.hpp"
#include "walkfit/geometry/polygon.hpp"

namespace walkfit {

struct Segment {
  Point2 a;
  Point2 b;
};

// Parameter t along the ray origin + t * dir where it meets segment s, if it does.
inline std::optional<double> ray_segment_hit(Point2 origin, Point2 dir, const Segment& s) {
  const Point2 e = s.b - s.a;
  const double denom = cross(dir, e);
  if (denom == 0.0) return std::nullopt;
  const Point2 w = s.a - origin;
  const double t = cross(w, e) / denom;
  const double u = cross(w, dir) / denom;
  if (t < 0.0 || u < -1e-12 || u > 1.0 + 1e-12) return std::nullopt;
  return t;
}

inline double ray_cast(Point2 origin, Point2 dir, const std::vector<Segment>& segments,
                       double max_distance = std::numeric_limits<double>::infinity()) {
  double best = max_distance;
  for (const Segment& s : segments)
    if (auto t = ray_segment_hit(origin, dir, s); t && *t < best) best = *t;
  return best;
}

inline void append_edges(const SimplePolygon& poly, std::vector<Segment>& out) {
  for (std::size_t i = 0; i < poly.size(); ++i) out.push_back({poly.edge_start(i), poly.edge_end(i)});
}

// Boundary polygon plus obstacles, for either the physical or the virtual world.
class Environment {
 public:
  Environment() = default;

  static Environment make(SimplePolygon boundary, std::vector<SimplePolygon> obstacles) {
    Environment env;
    const double tol = 1e-9 * std::max(1.0, boundary.area());
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      if (difference(obstacles[i], boundary).area() > tol)
        throw InvalidGeometry("obstacle " + std::to_string(i) + " is not inside the boundary");
      for (std::size_t j = 0; j < i; ++j)
        if (intersection(obstacles[i], obstacles[j]).area() > tol)
          throw InvalidGeometry("obstacles " + std::to_string(j) + " and " + std::to_string(i) +
                                " overlap");
    }
    env.free_space_ = obstacles.empty() ? PolygonSet(boundary)
                                        : difference(boundary, union_all(obstacles));
    if (env.free_space_.area() <= kSliverArea) throw InvalidGeometry("free space is empty");
    env.boundary_ = std::move(boundary);
    env.obstacles_ = std::move(obstacles);
    append_edges(env.boundary_, env.segments_);
    for (const SimplePolygon& o : env.obstacles_) append_edges(o, env.segments_);
    return env;
  }

  const SimplePolygon& boundary() const { return boundary_; }
  const std::vector<SimplePolygon>& obstacles() const { return obstacles_; }
  const PolygonSet& free_space() const { return free_space_; }
  double free_area() const { return free_space_.area(); }
  const std::vector<Segment>& segments() const { return segments_; }

  double clearance(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Segment& s : segments_) d = std::min(d, distance_to_segment(p, s.a, s.b));
    return d;
  }

  // Strictly inside free space with at least `margin` meters to every edge.
  bool in_free_space(Point2 p, double margin = 1e-9) const {
    if (!boundary_.contains(p)) return false;
    for (const SimplePolygon& o : obstacles_)
      if (o.contains(p)) return false;
    return clearance(p) > margin;
  }

  bool inside_boundary(Point2 p) const { return boundary_.contains(p); }

  bool inside_obstacle(Point2 p) const {
    for (const SimplePolygon& o : obstacles_)
      if (o.contains(p)) return true;
    return false;
  }

  double ray_distance(Point2 origin, double angle) const {
    return ray_cast(origin, unit_vector(angle), segments_);
  }

 private:
  SimplePolygon boundary_;
  std::vector<SimplePolygon> obstacles_;
  PolygonSet free_space_;
  std::vector<Segment> segments_;
};

}  // namespace walkfit
