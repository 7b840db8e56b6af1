#pragma once

// Relation-driven initial poses and the boundary / overlap repair steps.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "walkfit/geometry/boolean.hpp"
#include "walkfit/scene/layout.hpp"

namespace walkfit::placement {

struct PlacementConfig {
  double wall_offset = 0.1;     // gap to the wall for wall and corner anchors
  double near_threshold = 0.5;  // "near" for relation checks
  double clearance = 0.1;       // gap between related objects
  double scale_min = kScaleMin;
  double scale_max = kScaleMax;
  int refine_iters = 200;
  double refine_step = 0.25;
  double scale_step = 0.05;
  double repair_step = 0.05;
  unsigned rng_seed = 0;
  double door_clearance = 0.7;  // depth kept free in front of each doorway

  void validate() const {
    if (!(refine_step > 0.0) || !(scale_step > 0.0) || !(repair_step > 0.0))
      throw ConfigError("placement steps must be positive");
    if (refine_iters < 0) throw ConfigError("refine_iters must not be negative");
    if (door_clearance < 0.0) throw ConfigError("door_clearance must not be negative");
    if (!(scale_min > 0.0) || scale_min > 1.0 || scale_max < 1.0)
      throw ConfigError("scale bounds must bracket 1");
  }
};

// A room polygon plus the fixed obstacles (columns, counters) that sit inside it.
struct RoomSpace {
  Room room;
  std::vector<SimplePolygon> obstacles;
  Box bounds;

  std::vector<Segment> doorways;

  // With `virtual_env`, doorways (stretches of the outline where free space carries on outside
  // the room) get a keep-out strip `door_clearance` deep, stored with the obstacles.
  static RoomSpace make(const Room& room, const Environment* virtual_env = nullptr, double door_clearance = 0.7) {
    RoomSpace s;
    s.room = room;
    const auto [lo, hi] = room.polygon.bounds();
    s.bounds = Box{lo, hi};
    if (virtual_env == nullptr) return s;
    for (const SimplePolygon& o : virtual_env->obstacles())
      if (intersection(o, room.polygon).area() > 1e-9) s.obstacles.push_back(o);
    const SimplePolygon& poly = room.polygon;
    constexpr double kStep = 0.05;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point2 a = poly.edge_start(i), b = poly.edge_end(i);
      const double len = distance(a, b);
      const Point2 d = (b - a) / len;
      const Point2 out{d.y, -d.x};  // counter-clockwise outline: the outside is on the right
      const int n = std::max(1, static_cast<int>(std::ceil(len / kStep)));
      auto open = [&](int k) {
        const Point2 p = a + d * (len * (k + 0.5) / n);
        for (double t : {0.02, 0.05, 0.1, 0.2, 0.3})
          if (!virtual_env->in_free_space(p + out * t, 1e-9)) return false;
        return true;
      };
      for (int k = 0; k < n;) {
        if (!open(k)) {
          ++k;
          continue;
        }
        int e = k;
        while (e + 1 < n && open(e + 1)) ++e;
        const Point2 p0 = a + d * (len * k / n), p1 = a + d * (len * (e + 1) / n);
        s.doorways.push_back({p0, p1});
        if (door_clearance > 0.0)
          s.obstacles.push_back(SimplePolygon::from({p0, p1, p1 - out * door_clearance, p0 - out * door_clearance}));
        k = e + 1;
      }
    }
    return s;
  }

  bool inside(const Box& b) const { return box_inside(b, room.polygon, kLayoutTolerance); }

  bool hits_obstacle(const Box& b) const {
    for (const SimplePolygon& o : obstacles)
      if (box_overlaps(b, o, kLayoutTolerance)) return true;
    return false;
  }
};

struct Rejection {
  std::string object_id;
  std::string reason;
};

namespace place_detail {

inline Point2 inward_normal(const SimplePolygon& p, std::size_t i) {
  const Point2 d = p.edge_end(i) - p.edge_start(i);
  return Point2{-d.y, d.x} / norm(d);
}

// Quarter-turn yaw whose front is closest to `dir`.
inline int yaw_facing(Point2 dir) {
  const double deg = std::atan2(dir.y, dir.x) * 180.0 / kPi - 90.0;
  int yaw = static_cast<int>(std::lround(deg / 90.0)) * 90;
  return ((yaw % 360) + 360) % 360;
}

inline double half_extent_along(const PlacedObject& o, Point2 n) {
  return std::abs(n.x) >= std::abs(n.y) ? 0.5 * o.extent_x() : 0.5 * o.extent_y();
}

inline double point_box_distance(Point2 p, const Box& b) {
  const double dx = std::max({b.lo.x - p.x, 0.0, p.x - b.hi.x});
  const double dy = std::max({b.lo.y - p.y, 0.0, p.y - b.hi.y});
  return std::hypot(dx, dy);
}

inline double box_segment_distance(const Box& b, Point2 a, Point2 c) {
  if (segment_enters_box(a, c, b, 0.0) || b.contains_closed(a) || b.contains_closed(c)) return 0.0;
  double d = std::min(point_box_distance(a, b), point_box_distance(c, b));
  for (Point2 q : {b.lo, Point2{b.hi.x, b.lo.y}, b.hi, Point2{b.lo.x, b.hi.y}})
    d = std::min(d, distance_to_segment(q, a, c));
  return d;
}

// Shared vertex of two edges, or the intersection of their support lines.
inline Point2 corner_point(const SimplePolygon& p, int a, int b) {
  const std::size_t n = p.size();
  if (static_cast<std::size_t>(b) == (static_cast<std::size_t>(a) + 1) % n) return p.edge_end(a);
  if (static_cast<std::size_t>(a) == (static_cast<std::size_t>(b) + 1) % n) return p.edge_end(b);
  const Point2 p0 = p.edge_start(a), d0 = p.edge_end(a) - p0;
  const Point2 p1 = p.edge_start(b), d1 = p.edge_end(b) - p1;
  const double den = cross(d0, d1);
  if (std::abs(den) < 1e-12) return (p.edge_start(a) + p.edge_end(b)) * 0.5;
  return p0 + d0 * (cross(p1 - p0, d1) / den);
}

// Sets the local scale so the world extent along `axis` (0 = x) becomes `target`.
inline void set_world_extent(PlacedObject& o, int axis, double target) {
  const bool local_x = (axis == 0) != o.quarter_turned();
  if (local_x)
    o.scale_x = target / o.asset.width;
  else
    o.scale_y = target / o.asset.length;
}

inline double world_scale(const PlacedObject& o, int axis) {
  return ((axis == 0) != o.quarter_turned()) ? o.scale_x : o.scale_y;
}

}  // namespace place_detail

inline bool relation_satisfied(const RoomSpace& space, const std::vector<PlacedObject>& objects,
                               const RelationSpec& r, const PlacementConfig& cfg = {}) {
  using namespace place_detail;
  auto find = [&](const std::string& id) -> const PlacedObject* {
    for (const PlacedObject& o : objects)
      if (o.id == id) return &o;
    return nullptr;
  };
  const PlacedObject* s = find(r.subject);
  if (s == nullptr) return false;
  const Box box = footprint_box(*s);
  const SimplePolygon& poly = space.room.polygon;
  if (const auto* ra = std::get_if<RoomAnchor>(&r.anchor)) {
    auto edge_distance = [&](int k) {
      return box_segment_distance(box, poly.edge_start(k), poly.edge_end(k));
    };
    switch (ra->kind) {
      case RoomAnchorKind::near_wall: return edge_distance(ra->wall) <= cfg.near_threshold + 1e-9;
      case RoomAnchorKind::corner:
        return edge_distance(ra->wall) <= cfg.near_threshold + 1e-9 &&
               edge_distance(ra->wall2) <= cfg.near_threshold + 1e-9;
      case RoomAnchorKind::middle: {
        const Box& b = space.bounds;
        const Box mid{b.lo + Point2{0.25 * b.width(), 0.25 * b.height()},
                      b.hi - Point2{0.25 * b.width(), 0.25 * b.height()}};
        return mid.contains_closed(s->center, 1e-9);
      }
      case RoomAnchorKind::far_wall: {
        const Point2 n = inward_normal(poly, static_cast<std::size_t>(ra->wall));
        const Point2 a = poly.edge_start(ra->wall);
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
          const double t = dot(poly[i] - a, n);
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
        return dot(s->center - a, n) >= 0.5 * (hi - lo) - 1e-9;
      }
    }
    return false;
  }
  const auto& oa = std::get<ObjectAnchor>(r.anchor);
  const PlacedObject* t = find(oa.target);
  if (t == nullptr || t == s) return false;
  const Point2 d = s->center - t->center;
  if (norm(d) > 3.0 + 1e-9) return false;
  constexpr double e = 1e-9;
  const double along = dot(d, t->front());
  switch (oa.kind) {
    case ObjectAnchorKind::left: return d.x < -e;
    case ObjectAnchorKind::right: return d.x > e;
    case ObjectAnchorKind::top: return d.y > e;
    case ObjectAnchorKind::bottom: return d.y < -e;
    case ObjectAnchorKind::front: return along > e;
    case ObjectAnchorKind::behind: return along < -e;
    case ObjectAnchorKind::top_left: return d.x < -e && d.y > e;
    case ObjectAnchorKind::top_right: return d.x > e && d.y > e;
    case ObjectAnchorKind::bottom_left: return d.x < -e && d.y < -e;
    case ObjectAnchorKind::bottom_right: return d.x > e && d.y < -e;
    case ObjectAnchorKind::top_center: return d.y > e && std::abs(d.x) <= 0.5 * t->extent_x() + e;
    case ObjectAnchorKind::bottom_center: return d.y < -e && std::abs(d.x) <= 0.5 * t->extent_x() + e;
  }
  return false;
}

// Poses every object from its relation. Objects without a relation go to the middle. Relations
// reference object ids; at most one relation per subject is used (the first).
inline std::vector<PlacedObject> initial_place(const RoomSpace& space, std::vector<PlacedObject> objects,
                                               const std::vector<RelationSpec>& relations,
                                               const PlacementConfig& cfg = {}) {
  using namespace place_detail;
  const SimplePolygon& poly = space.room.polygon;
  std::map<std::string, const RelationSpec*> rel;
  for (const RelationSpec& r : relations)
    if (!rel.count(r.subject)) rel[r.subject] = &r;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < objects.size(); ++i) index[objects[i].id] = i;

  // Room anchors (and unrelated objects) first, then object anchors once their target is placed.
  std::vector<std::size_t> order;
  std::vector<char> done(objects.size(), 0);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto it = rel.find(objects[i].id);
    const bool object_anchor = it != rel.end() && !it->second->is_room_anchor() &&
                               index.count(std::get<ObjectAnchor>(it->second->anchor).target);
    if (!object_anchor) {
      order.push_back(i);
      done[i] = 1;
    }
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (done[i]) continue;
      const auto& oa = std::get<ObjectAnchor>(rel.at(objects[i].id)->anchor);
      if (done[index.at(oa.target)]) {
        order.push_back(i);
        done[i] = 1;
        progress = true;
      }
    }
  }
  if (order.size() != objects.size()) {
    std::string cycle;
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (!done[i]) cycle += (cycle.empty() ? "" : " -> ") + objects[i].id;
    throw InvalidQuery("cyclic relations: " + cycle);
  }

  const PlacedObject* last_middle = nullptr;
  const Point2 centroid = poly.centroid();
  for (std::size_t i : order) {
    PlacedObject& o = objects[i];
    const auto it = rel.find(o.id);
    const RelationSpec* r = it == rel.end() ? nullptr : it->second;
    const RoomAnchor* ra = r ? std::get_if<RoomAnchor>(&r->anchor) : nullptr;
    if (r == nullptr || (ra && ra->kind == RoomAnchorKind::middle) ||
        (!ra && !index.count(std::get<ObjectAnchor>(r->anchor).target))) {
      o.yaw = 0;
      o.center = centroid;
      if (last_middle != nullptr)
        o.center = last_middle->center +
                   Point2{0.5 * last_middle->extent_x() + cfg.clearance + 0.5 * o.extent_x(), 0.0};
      last_middle = &o;
      continue;
    }
    if (ra != nullptr) {
      const auto w = static_cast<std::size_t>(ra->wall);
      const Point2 n = inward_normal(poly, w);
      if (ra->kind == RoomAnchorKind::near_wall) {
        o.yaw = yaw_facing(n);
        const Point2 m = (poly.edge_start(w) + poly.edge_end(w)) * 0.5;
        o.center = m + n * (cfg.wall_offset + half_extent_along(o, n));
      } else if (ra->kind == RoomAnchorKind::far_wall) {
        o.yaw = yaw_facing(n * -1.0);
        // Opposite side: the farthest vertex along the inward normal, on the midpoint's line.
        const Point2 m = (poly.edge_start(w) + poly.edge_end(w)) * 0.5;
        double reach = 0.0;
        for (std::size_t k = 0; k < poly.size(); ++k) reach = std::max(reach, dot(poly[k] - m, n));
        o.center = m + n * (reach - cfg.wall_offset - half_extent_along(o, n));
      } else {
        const auto w2 = static_cast<std::size_t>(ra->wall2);
        const Point2 n2 = inward_normal(poly, w2);
        o.yaw = yaw_facing(n);
        o.center = corner_point(poly, ra->wall, ra->wall2) + n * (cfg.wall_offset + half_extent_along(o, n)) +
                   n2 * (cfg.wall_offset + half_extent_along(o, n2));
      }
      continue;
    }
    const auto& oa = std::get<ObjectAnchor>(r->anchor);
    const PlacedObject& t = objects[index.at(oa.target)];
    const double gx = 0.5 * t.extent_x() + cfg.clearance;
    const double gy = 0.5 * t.extent_y() + cfg.clearance;
    o.yaw = t.yaw;
    switch (oa.kind) {
      case ObjectAnchorKind::left:
        o.yaw = 270;
        o.center = t.center - Point2{gx + 0.5 * o.extent_x(), 0.0};
        break;
      case ObjectAnchorKind::right:
        o.yaw = 90;
        o.center = t.center + Point2{gx + 0.5 * o.extent_x(), 0.0};
        break;
      case ObjectAnchorKind::top:
      case ObjectAnchorKind::top_center:
        if (oa.kind == ObjectAnchorKind::top) o.yaw = 180;
        o.center = t.center + Point2{0.0, gy + 0.5 * o.extent_y()};
        break;
      case ObjectAnchorKind::bottom:
      case ObjectAnchorKind::bottom_center:
        if (oa.kind == ObjectAnchorKind::bottom) o.yaw = 0;
        o.center = t.center - Point2{0.0, gy + 0.5 * o.extent_y()};
        break;
      case ObjectAnchorKind::front:
      case ObjectAnchorKind::behind: {
        const Point2 f = t.front() * (oa.kind == ObjectAnchorKind::front ? 1.0 : -1.0);
        const Point2 axis = std::abs(f.x) > std::abs(f.y) ? Point2{std::copysign(1.0, f.x), 0.0}
                                                          : Point2{0.0, std::copysign(1.0, f.y)};
        if (oa.kind == ObjectAnchorKind::front) o.yaw = (t.yaw + 180) % 360;
        o.center = t.center + axis * (half_extent_along(t, axis) + cfg.clearance + half_extent_along(o, axis));
        break;
      }
      default: {
        const double sx = (oa.kind == ObjectAnchorKind::top_left || oa.kind == ObjectAnchorKind::bottom_left) ? -1 : 1;
        const double sy = (oa.kind == ObjectAnchorKind::top_left || oa.kind == ObjectAnchorKind::top_right) ? 1 : -1;
        o.center = t.center + Point2{sx * (gx + 0.5 * o.extent_x()), sy * (gy + 0.5 * o.extent_y())};
      }
    }
  }
  return objects;
}

// Step A. Objects wider than the room on an axis are shrunk toward the scale floor first;
// each object is then shifted into the room, x before y, by the smallest distance.
inline std::vector<Rejection> repair_oob(const RoomSpace& space, std::vector<PlacedObject>& objects,
                                         const PlacementConfig& cfg = {}) {
  using namespace place_detail;
  std::vector<Rejection> rejected;
  std::vector<PlacedObject> kept;
  const Box& b = space.bounds;
  for (PlacedObject o : objects) {
    bool ok = true;
    for (int axis = 0; axis < 2 && ok; ++axis) {
      const double room_ext = axis == 0 ? b.width() : b.height();
      const double ext = axis == 0 ? o.extent_x() : o.extent_y();
      if (ext <= room_ext + 1e-12) continue;
      const double needed = world_scale(o, axis) * room_ext / ext;
      // Flush at the scale floor counts as too large: it would leave no slack at all.
      if (needed <= cfg.scale_min + 1e-9) {
        rejected.push_back({o.id, "larger than the room even at the smallest scale"});
        ok = false;
      } else {
        set_world_extent(o, axis, room_ext);
      }
    }
    if (!ok) continue;
    Box f = footprint_box(o);
    if (!space.inside(f)) {
      if (f.lo.x < b.lo.x) o.center.x += b.lo.x - f.lo.x;
      if (f.hi.x > b.hi.x) o.center.x -= f.hi.x - b.hi.x;
      f = footprint_box(o);
      if (f.lo.y < b.lo.y) o.center.y += b.lo.y - f.lo.y;
      if (f.hi.y > b.hi.y) o.center.y -= f.hi.y - b.hi.y;
    }
    if (!space.inside(footprint_box(o))) {
      // Non-rectangular room: nearest inside position, one axis first, then both.
      const Point2 start = o.center;
      const int reach = static_cast<int>(std::ceil(std::max(b.width(), b.height()) / cfg.repair_step));
      bool found = false;
      for (int k = 1; k <= reach && !found; ++k)
        for (Point2 d : {Point2{1, 0}, Point2{-1, 0}, Point2{0, 1}, Point2{0, -1}}) {
          o.center = start + d * (k * cfg.repair_step);
          if (space.inside(footprint_box(o))) {
            found = true;
            break;
          }
        }
      for (int ring = 1; ring <= reach && !found; ++ring)
        for (int i = -ring; i <= ring && !found; ++i)
          for (int j = -ring; j <= ring && !found; ++j) {
            if (std::max(std::abs(i), std::abs(j)) != ring) continue;
            o.center = start + Point2{i * cfg.repair_step, j * cfg.repair_step};
            found = space.inside(footprint_box(o));
          }
      if (!found) {
        rejected.push_back({o.id, "no position inside the room"});
        continue;
      }
    }
    kept.push_back(o);
  }
  objects = std::move(kept);
  return rejected;
}

namespace place_detail {

// Overlap of a box with fixed obstacle `k`, measured on its bounding box (ordering only).
inline double obstacle_overlap(const RoomSpace& s, const Box& b, std::size_t k) {
  if (!box_overlaps(b, s.obstacles[k], kLayoutTolerance)) return 0.0;
  const auto [lo, hi] = s.obstacles[k].bounds();
  return std::max(overlap_area(b, Box{lo, hi}), 1e-6);
}

inline bool clear_at(const RoomSpace& s, const std::vector<PlacedObject>& objs, std::size_t i, const Box& b) {
  if (!s.inside(b) || s.hits_obstacle(b)) return false;
  for (std::size_t j = 0; j < objs.size(); ++j)
    if (j != i && overlap_area(b, footprint_box(objs[j])) > kLayoutTolerance) return false;
  return true;
}

inline double total_overlap(const RoomSpace& s, const std::vector<PlacedObject>& objs, std::size_t i, const Box& b) {
  double t = 0.0;
  for (std::size_t j = 0; j < objs.size(); ++j)
    if (j != i) t += overlap_area(b, footprint_box(objs[j]));
  for (std::size_t k = 0; k < s.obstacles.size(); ++k) t += obstacle_overlap(s, b, k);
  return t;
}

}  // namespace place_detail

// Steps B and C. The pair with the largest overlap is handled first: the smaller object slides
// along one axis to the nearest clear spot; failing that it takes the least-overlap spot and the
// larger object shrinks on the overlapped axis; if that is not enough the smaller one is rejected.
inline std::vector<Rejection> repair_overlaps(const RoomSpace& space, std::vector<PlacedObject>& objects,
                                              const PlacementConfig& cfg = {}) {
  using namespace place_detail;
  std::vector<Rejection> rejected;
  const Box& b = space.bounds;
  const int reach_x = static_cast<int>(std::ceil(b.width() / cfg.repair_step));
  const int reach_y = static_cast<int>(std::ceil(b.height() / cfg.repair_step));
  auto reject = [&](std::size_t i, const std::string& why) {
    rejected.push_back({objects[i].id, why});
    objects.erase(objects.begin() + static_cast<std::ptrdiff_t>(i));
  };
  for (std::size_t guard = 0; guard < 20 * (objects.size() + 1) * (objects.size() + 1); ++guard) {
    // Largest overlapping pair; obstacles are encoded as j = objects.size() + k.
    double worst = kLayoutTolerance;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const Box bi = footprint_box(objects[i]);
      for (std::size_t j = i + 1; j < objects.size(); ++j) {
        const double a = overlap_area(bi, footprint_box(objects[j]));
        if (a > worst) worst = a, wi = i, wj = j;
      }
      for (std::size_t k = 0; k < space.obstacles.size(); ++k) {
        const double a = obstacle_overlap(space, bi, k);
        if (a > worst) worst = a, wi = i, wj = objects.size() + k;
      }
    }
    if (worst <= kLayoutTolerance) break;

    const bool fixed = wj >= objects.size();
    std::size_t mover = wi, other = wj;
    if (!fixed && objects[wj].footprint_area() <= objects[wi].footprint_area()) std::swap(mover, other);
    PlacedObject& m = objects[mover];
    const Point2 start = m.center;

    // Nearest clear slot along each axis.
    auto scan = [&](Point2 dir, int reach) -> double {
      for (int k = 1; k <= reach; ++k)
        for (double sgn : {1.0, -1.0}) {
          m.center = start + dir * (sgn * k * cfg.repair_step);
          if (clear_at(space, objects, mover, footprint_box(m))) {
            m.center = start;
            return sgn * k * cfg.repair_step;
          }
        }
      m.center = start;
      return std::nan("");
    };
    const double dx = scan({1, 0}, reach_x);
    const double dy = scan({0, 1}, reach_y);
    if (!std::isnan(dx) || !std::isnan(dy)) {
      if (std::isnan(dy) || (!std::isnan(dx) && std::abs(dx) <= std::abs(dy)))
        m.center.x += dx;
      else
        m.center.y += dy;
      continue;
    }

    // Step C: least-overlap slot on either axis (current spot included).
    double best = total_overlap(space, objects, mover, footprint_box(m));
    Point2 best_c = start;
    for (int axis = 0; axis < 2; ++axis) {
      const Point2 dir = axis == 0 ? Point2{1, 0} : Point2{0, 1};
      const int reach = axis == 0 ? reach_x : reach_y;
      for (int k = -reach; k <= reach; ++k) {
        m.center = start + dir * (k * cfg.repair_step);
        const Box f = footprint_box(m);
        if (!space.inside(f)) continue;
        const double t = total_overlap(space, objects, mover, f);
        if (t < best - 1e-12) best = t, best_c = m.center;
      }
    }
    m.center = best_c;
    // Partner of the worst overlap at the new spot.
    const Box fm = footprint_box(m);
    double pw = 0.0;
    std::size_t partner = objects.size();
    for (std::size_t j = 0; j < objects.size(); ++j) {
      if (j == mover) continue;
      const double a = overlap_area(fm, footprint_box(objects[j]));
      if (a > pw) pw = a, partner = j;
    }
    if (partner == objects.size() || space.hits_obstacle(fm)) {
      if (space.hits_obstacle(fm)) reject(mover, "no position clear of fixed obstacles");
      continue;
    }
    PlacedObject& big = objects[partner];
    const Box fb = footprint_box(big);
    const double ox = std::min(fm.hi.x, fb.hi.x) - std::max(fm.lo.x, fb.lo.x);
    const double oy = std::min(fm.hi.y, fb.hi.y) - std::max(fm.lo.y, fb.lo.y);
    const int axis = ox <= oy ? 0 : 1;
    const double depth = axis == 0 ? ox : oy;
    const PlacedObject saved = big;
    const double ext = axis == 0 ? big.extent_x() : big.extent_y();
    // Shrink about the far edge so the freed length is all on the mover's side.
    const double floor_ext = ext * cfg.scale_min / world_scale(big, axis);
    const double target = std::max(ext - depth, floor_ext);
    set_world_extent(big, axis, target);
    const double shift = 0.5 * (ext - target);
    const double side = axis == 0 ? (fm.center().x < fb.center().x ? 1.0 : -1.0)
                                  : (fm.center().y < fb.center().y ? 1.0 : -1.0);
    if (axis == 0)
      big.center.x += side * shift;
    else
      big.center.y += side * shift;
    if (overlap_area(footprint_box(big), footprint_box(objects[mover])) > kLayoutTolerance ||
        !clear_at(space, objects, partner, footprint_box(big))) {
      big = saved;
      reject(mover, "overlap remains after shrinking " + big.id);
    }
  }
  // Anything still overlapping after the guard is rejected, smallest first.
  for (;;) {
    std::size_t pick = objects.size();
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (!clear_at(space, objects, i, footprint_box(objects[i])) &&
          (pick == objects.size() || objects[i].footprint_area() < objects[pick].footprint_area()))
        pick = i;
    if (pick == objects.size()) break;
    reject(pick, "unresolved overlap");
  }
  return rejected;
}

}  // namespace walkfit::placement
