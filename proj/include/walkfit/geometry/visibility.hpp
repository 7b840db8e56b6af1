#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "walkfit/geometry/environment.hpp"

namespace walkfit {

namespace detail {

// Drops repeated and collinear vertices from a closed ring.
inline std::vector<Point2> simplify_ring(std::vector<Point2> ring, double tol = 1e-10) {
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const Point2& p : ring)
    if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
  while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
  bool changed = true;
  while (changed && out.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && out.size() > 3; ++i) {
      const Point2 a = out[(i + out.size() - 1) % out.size()];
      const Point2 b = out[i];
      const Point2 c = out[(i + 1) % out.size()];
      const double len = std::max(distance(a, c), 1e-300);
      if (std::abs(orient(a, b, c)) / len <= tol && dot(b - a, c - b) >= 0.0) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return out;
}

}  // namespace detail

// Exact visibility polygon by angular sweep over segment endpoints. Between two consecutive
// endpoint angles the nearest segment cannot change (segments only meet at endpoints), so one
// probe ray at the mid-angle identifies it and the two bounding rays are intersected with its
// supporting line.
inline SimplePolygon visibility_polygon(Point2 origin, const std::vector<Segment>& segments) {
  std::vector<double> angles;
  angles.reserve(2 * segments.size() + 8);
  for (const Segment& s : segments) {
    if (distance(s.a, origin) > 0.0) angles.push_back(polar_angle(s.a - origin));
    if (distance(s.b, origin) > 0.0) angles.push_back(polar_angle(s.b - origin));
  }
  for (int k = 0; k < 8; ++k) angles.push_back(k * kPi / 4.0);
  std::sort(angles.begin(), angles.end());
  std::vector<double> unique;
  for (double a : angles)
    if (unique.empty() || a - unique.back() > 1e-13) unique.push_back(a);
  if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= 1e-13) unique.pop_back();

  std::vector<Point2> ring;
  ring.reserve(2 * unique.size());
  const std::size_t n = unique.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a0 = unique[i];
    const double a1 = (i + 1 < n) ? unique[i + 1] : unique[0] + kTwoPi;
    const Point2 mid_dir = unit_vector(0.5 * (a0 + a1));
    double best = std::numeric_limits<double>::infinity();
    const Segment* nearest = nullptr;
    for (const Segment& s : segments) {
      if (auto t = ray_segment_hit(origin, mid_dir, s); t && *t < best) {
        best = *t;
        nearest = &s;
      }
    }
    if (nearest == nullptr) throw InvalidQuery("visibility region is unbounded at this origin");
    const Point2 e = nearest->b - nearest->a;
    const Point2 w = nearest->a - origin;
    for (double a : {a0, a1}) {
      const Point2 dir = unit_vector(a);
      const double denom = cross(dir, e);
      double t = std::abs(denom) > 1e-300 ? cross(w, e) / denom : best;
      if (!std::isfinite(t) || t < 0.0) t = best;
      ring.push_back(origin + dir * t);
    }
  }
  return SimplePolygon::unchecked(detail::simplify_ring(std::move(ring)));
}

inline SimplePolygon visibility_polygon(Point2 origin, const Environment& env) {
  if (!env.inside_boundary(origin) || env.inside_obstacle(origin) || env.clearance(origin) <= 1e-9)
    throw InvalidQuery("visibility origin must lie strictly inside free space");
  return visibility_polygon(origin, env.segments());
}

}  // namespace walkfit
