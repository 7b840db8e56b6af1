#pragma once

// Polygon boolean operations. Backed by Boost.Geometry; this header owns the conversion,
// coordinate snapping and sliver removal so that callers only ever see PolygonSet.

#include <cmath>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "walkfit/geometry/polygon.hpp"

namespace walkfit {

enum class BooleanKind { intersection, difference, union_ };

inline constexpr double kSnapTolerance = 1e-9;   // meters
inline constexpr double kSliverArea = 1e-10;     // square meters

namespace detail {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, false, false>;
using BMulti = bg::model::multi_polygon<BPolygon>;

inline double snap(double v) { return std::round(v / kSnapTolerance) * kSnapTolerance; }

inline void append_ring(const std::vector<Point2>& ring, BPolygon::ring_type& out) {
  for (const Point2& p : ring) {
    const BPoint q(snap(p.x), snap(p.y));
    if (!out.empty() && bg::get<0>(out.back()) == q.x() && bg::get<1>(out.back()) == q.y()) continue;
    out.push_back(q);
  }
}

inline BMulti to_boost(const PolygonSet& set) {
  BMulti multi;
  for (const PolygonWithHoles& part : set.parts) {
    BPolygon poly;
    append_ring(part.outer.vertices(), poly.outer());
    for (const SimplePolygon& h : part.holes) {
      poly.inners().emplace_back();
      append_ring(h.vertices(), poly.inners().back());
    }
    bg::correct(poly);
    multi.push_back(std::move(poly));
  }
  return multi;
}

inline std::vector<Point2> from_ring(const BPolygon::ring_type& ring) {
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const BPoint& p : ring) {
    const Point2 q{snap(p.x()), snap(p.y())};
    if (!out.empty() && out.back() == q) continue;
    out.push_back(q);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

inline bool usable_ring(std::vector<Point2>& ring) {
  if (ring.size() < 3) return false;
  const double a = signed_area(ring);
  if (std::abs(a) < kSliverArea) return false;
  if (a < 0.0) std::reverse(ring.begin(), ring.end());
  return true;
}

inline PolygonSet from_boost(const BMulti& multi) {
  PolygonSet out;
  for (const BPolygon& poly : multi) {
    std::vector<Point2> outer = from_ring(poly.outer());
    if (!usable_ring(outer)) continue;
    PolygonWithHoles part{SimplePolygon::unchecked(std::move(outer)), {}};
    for (const auto& inner : poly.inners()) {
      std::vector<Point2> hole = from_ring(inner);
      if (!usable_ring(hole)) continue;
      part.holes.push_back(SimplePolygon::unchecked(std::move(hole)));
    }
    if (part.area() < kSliverArea) continue;
    out.parts.push_back(std::move(part));
  }
  return out;
}

}  // namespace detail

// Set semantics up to the 1e-9 m snapping grid; parts and holes under 1e-10 m² are dropped.
inline PolygonSet boolean_op(const PolygonSet& a, const PolygonSet& b, BooleanKind kind) {
  namespace bg = boost::geometry;
  const detail::BMulti ba = detail::to_boost(a);
  const detail::BMulti bb = detail::to_boost(b);
  detail::BMulti out;
  switch (kind) {
    case BooleanKind::intersection:
      bg::intersection(ba, bb, out);
      break;
    case BooleanKind::difference:
      bg::difference(ba, bb, out);
      break;
    case BooleanKind::union_:
      bg::union_(ba, bb, out);
      break;
  }
  return detail::from_boost(out);
}

inline PolygonSet intersection(const PolygonSet& a, const PolygonSet& b) {
  return boolean_op(a, b, BooleanKind::intersection);
}
inline PolygonSet difference(const PolygonSet& a, const PolygonSet& b) {
  return boolean_op(a, b, BooleanKind::difference);
}
inline PolygonSet union_of(const PolygonSet& a, const PolygonSet& b) {
  return boolean_op(a, b, BooleanKind::union_);
}

inline PolygonSet union_all(const std::vector<SimplePolygon>& polys) {
  PolygonSet acc;
  for (const SimplePolygon& p : polys) acc = acc.empty() ? PolygonSet(p) : union_of(acc, p);
  return acc;
}

inline PolygonSet clip_to_window(const SimplePolygon& p, Point2 center, double half_extent) {
  if (!(half_extent > 0.0)) throw InvalidQuery("window half extent must be positive");
  return intersection(PolygonSet(p), PolygonSet(SimplePolygon::square(center, half_extent)));
}

// Area of a minus its own difference with b, i.e. the overlap written as a \ (a \ b).
inline double overlap_area_literal(const PolygonSet& a, const PolygonSet& b) {
  return polygon_area(difference(a, difference(a, b)));
}

}  // namespace walkfit
