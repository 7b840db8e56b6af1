#pragma once

// Star-shaped polygons stored in polar form around their kernel point.
//
// Visibility polygons are star-shaped with respect to their origin, and so is their
// intersection with any convex window containing the origin. Two such polygons that share the
// same kernel point intersect in the region bounded by the pointwise minimum of their radial
// functions, which can be integrated exactly by merging the two angular edge lists. This is
// the hot path of the metric; boolean_op() stays the reference for general polygons.

#include <algorithm>
#include <cmath>
#include <vector>

#include "walkfit/geometry/polygon.hpp"

namespace walkfit {

// One edge of a star polygon seen from the kernel: the angular interval [start, end) and the
// supporting line through `p` with direction `d`, all relative to the kernel point.
struct AngularPiece {
  double start = 0.0;
  double end = 0.0;
  Point2 start_dir;  // unit vector at `start`
  Point2 end_dir;    // unit vector at `end`
  Point2 p;
  Point2 d;

  // Intersection of the ray along unit vector u with the supporting line, as a distance.
  double radius(Point2 u) const { return cross(p, d) / cross(u, d); }
};

class StarPolygon {
 public:
  StarPolygon() = default;

  // `ring` must be counter-clockwise and star-shaped around `kernel`, with the kernel strictly
  // inside. Coordinates are absolute.
  static StarPolygon from_ring(Point2 kernel, const std::vector<Point2>& ring) {
    StarPolygon star;
    star.kernel_ = kernel;
    const std::size_t n = ring.size();
    std::vector<AngularPiece> pieces;
    pieces.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = ring[i] - kernel;
      const Point2 b = ring[(i + 1) % n] - kernel;
      const double width = std::atan2(cross(a, b), dot(a, b));
      if (!(width > 1e-14)) continue;
      const double start = std::atan2(a.y, a.x);
      pieces.push_back({start, start + width, {}, {}, a, b - a});
    }
    star.pieces_ = normalize(std::move(pieces));
    star.area_ = star.compute_area();
    return star;
  }

  static StarPolygon from_polygon(Point2 kernel, const SimplePolygon& poly) {
    return from_ring(kernel, poly.vertices());
  }

  Point2 kernel() const { return kernel_; }
  const std::vector<AngularPiece>& pieces() const { return pieces_; }
  double area() const { return area_; }
  bool empty() const { return pieces_.empty(); }

  // Radial distance to the boundary in direction `angle`.
  double radius_at(double angle) const {
    const double a = normalize_angle(angle);
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), a,
                               [](double v, const AngularPiece& pc) { return v < pc.start; });
    const AngularPiece& pc = (it == pieces_.begin()) ? pieces_.back() : *(it - 1);
    return pc.radius(unit_vector(a));
  }

  // Rotation about the kernel point.
  StarPolygon rotated(double angle) const {
    StarPolygon out;
    out.kernel_ = kernel_;
    out.area_ = area_;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto rot = [c, s](Point2 v) { return Point2{c * v.x - s * v.y, s * v.x + c * v.y}; };
    std::vector<AngularPiece> pieces;
    pieces.reserve(pieces_.size() + 1);
    for (const AngularPiece& pc : pieces_)
      pieces.push_back({pc.start + angle, pc.end + angle, {}, {}, rot(pc.p), rot(pc.d)});
    out.pieces_ = normalize(std::move(pieces));
    return out;
  }

  // Moves the kernel; the shape is unchanged relative to it.
  StarPolygon recentered(Point2 kernel) const {
    StarPolygon out = *this;
    out.kernel_ = kernel;
    return out;
  }

  std::vector<Point2> vertices() const;

  SimplePolygon to_polygon() const { return SimplePolygon::unchecked(vertices()); }

 private:
  // Wraps piece intervals into [0, 2π), splits the one crossing 2π, sorts, and closes rounding
  // gaps so consecutive pieces share their boundary angle exactly.
  static std::vector<AngularPiece> normalize(std::vector<AngularPiece> in) {
    std::vector<AngularPiece> out;
    out.reserve(in.size() + 1);
    for (AngularPiece pc : in) {
      const double width = pc.end - pc.start;
      double s = std::fmod(pc.start, kTwoPi);
      if (s < 0.0) s += kTwoPi;
      if (s >= kTwoPi) s -= kTwoPi;
      const double e = s + width;
      if (e > kTwoPi) {
        AngularPiece tail = pc;
        tail.start = s;
        tail.end = kTwoPi;
        out.push_back(tail);
        AngularPiece head = pc;
        head.start = 0.0;
        head.end = e - kTwoPi;
        out.push_back(head);
      } else {
        pc.start = s;
        pc.end = e;
        out.push_back(pc);
      }
    }
    std::sort(out.begin(), out.end(),
              [](const AngularPiece& a, const AngularPiece& b) { return a.start < b.start; });
    if (out.empty()) return out;
    out.front().start = 0.0;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i].end = out[i + 1].start;
    out.back().end = kTwoPi;
    std::vector<AngularPiece> kept;
    kept.reserve(out.size());
    for (AngularPiece& pc : out) {
      if (pc.end - pc.start <= 0.0) continue;
      pc.start_dir = unit_vector(pc.start);
      pc.end_dir = unit_vector(pc.end);
      kept.push_back(pc);
    }
    return kept;
  }

  double compute_area() const {
    double a = 0.0;
    for (const AngularPiece& pc : pieces_)
      a += 0.5 * cross(pc.start_dir * pc.radius(pc.start_dir), pc.end_dir * pc.radius(pc.end_dir));
    return a;
  }

  Point2 kernel_;
  std::vector<AngularPiece> pieces_;
  double area_ = 0.0;
};

namespace detail {

inline Point2 line_crossing(const AngularPiece& a, const AngularPiece& b, bool& ok) {
  const double denom = cross(a.d, b.d);
  if (std::abs(denom) < 1e-300) {
    ok = false;
    return {};
  }
  ok = true;
  return a.p + a.d * (cross(b.p - a.p, b.d) / denom);
}

}  // namespace detail

// Walks the pointwise minimum of two radial functions sharing a kernel point and reports each
// boundary piece of the envelope as a (from, to) pair of kernel-relative points.
template <class Emit>
void walk_min_envelope(const StarPolygon& a, const StarPolygon& b, Emit&& emit) {
  const std::vector<AngularPiece>& pa = a.pieces();
  const std::vector<AngularPiece>& pb = b.pieces();
  if (pa.empty() || pb.empty()) return;
  std::size_t i = 0;
  std::size_t j = 0;
  Point2 u0 = pa[0].start_dir;
  constexpr double kEps = 1e-15;
  while (i < pa.size() && j < pb.size()) {
    const AngularPiece& A = pa[i];
    const AngularPiece& B = pb[j];
    Point2 u1;
    if (A.end < B.end - kEps) {
      u1 = A.end_dir;
      ++i;
    } else if (B.end < A.end - kEps) {
      u1 = B.end_dir;
      ++j;
    } else {
      u1 = A.end_dir;
      ++i;
      ++j;
    }
    const double ra0 = A.radius(u0);
    const double ra1 = A.radius(u1);
    const double rb0 = B.radius(u0);
    const double rb1 = B.radius(u1);
    const bool a_first = ra0 <= rb0;
    const bool a_second = ra1 <= rb1;
    if (a_first == a_second) {
      if (a_first)
        emit(u0 * ra0, u1 * ra1);
      else
        emit(u0 * rb0, u1 * rb1);
    } else {
      bool ok = false;
      const Point2 c = detail::line_crossing(A, B, ok);
      const Point2 s0 = a_first ? u0 * ra0 : u0 * rb0;
      const Point2 s1 = a_second ? u1 * ra1 : u1 * rb1;
      if (ok) {
        emit(s0, c);
        emit(c, s1);
      } else {
        emit(s0, s1);
      }
    }
    u0 = u1;
  }
}

// Area of the intersection of two star polygons with a common kernel.
inline double star_overlap_area(const StarPolygon& a, const StarPolygon& b) {
  double twice = 0.0;
  walk_min_envelope(a, b, [&](Point2 p, Point2 q) { twice += cross(p, q); });
  return 0.5 * twice;
}

// Intersection polygon of two star polygons with a common kernel (kernel of `a`).
inline StarPolygon star_intersection(const StarPolygon& a, const StarPolygon& b) {
  std::vector<Point2> ring;
  walk_min_envelope(a, b, [&](Point2 p, Point2 q) {
    ring.push_back(a.kernel() + p);
    ring.push_back(a.kernel() + q);
  });
  std::vector<Point2> clean;
  for (const Point2& p : ring)
    if (clean.empty() || distance(clean.back(), p) > 1e-10) clean.push_back(p);
  while (clean.size() > 1 && distance(clean.front(), clean.back()) <= 1e-10) clean.pop_back();
  return StarPolygon::from_ring(a.kernel(), clean);
}

inline std::vector<Point2> StarPolygon::vertices() const {
  std::vector<Point2> out;
  out.reserve(2 * pieces_.size());
  for (const AngularPiece& pc : pieces_) {
    const Point2 s = kernel_ + pc.start_dir * pc.radius(pc.start_dir);
    const Point2 e = kernel_ + pc.end_dir * pc.radius(pc.end_dir);
    if (out.empty() || distance(out.back(), s) > 1e-10) out.push_back(s);
    if (distance(out.back(), e) > 1e-10) out.push_back(e);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= 1e-10) out.pop_back();
  // Collinear points introduced by piece splits at angle 0 are harmless but noisy.
  std::vector<Point2> clean;
  const std::size_t n = out.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 prev = out[(k + n - 1) % n];
    const Point2 next = out[(k + 1) % n];
    const double len = std::max(distance(prev, next), 1e-300);
    if (n > 3 && std::abs(orient(prev, out[k], next)) / len <= 1e-10 &&
        dot(out[k] - prev, next - out[k]) > 0.0)
      continue;
    clean.push_back(out[k]);
  }
  return clean;
}

}  // namespace walkfit
