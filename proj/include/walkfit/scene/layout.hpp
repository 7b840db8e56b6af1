#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "walkfit/eni/summary.hpp"
#include "walkfit/geometry/box.hpp"
#include "walkfit/geometry/environment.hpp"
#include "walkfit/scene/relation.hpp"

namespace walkfit {

struct FloorPlan {
  SimplePolygon outline;
  std::vector<SimplePolygon> walls;
  double door_gap_width = 0.9;
};

inline Environment floorplan_to_environment(const FloorPlan& fp) {
  return Environment::make(fp.outline, fp.walls);
}

enum class SizeClass { huge, large, medium, small, tiny };

inline std::string_view to_string(SizeClass c) {
  switch (c) {
    case SizeClass::huge: return "huge";
    case SizeClass::large: return "large";
    case SizeClass::medium: return "medium";
    case SizeClass::small: return "small";
    case SizeClass::tiny: return "tiny";
  }
  return "tiny";
}

// Buckets on the room's share of the virtual free area; a value on a bucket edge belongs to
// the bucket below it (0.25 is large, 0.1 is tiny).
inline SizeClass size_class(double m) {
  if (!(m > 0.0) || m > 1.0) throw InvalidQuery("room size fraction must lie in (0, 1]");
  if (m > 0.25) return SizeClass::huge;
  if (m > 0.166) return SizeClass::large;
  if (m > 0.125) return SizeClass::medium;
  if (m > 0.1) return SizeClass::small;
  return SizeClass::tiny;
}

struct Room {
  std::string id;
  SimplePolygon polygon;
  std::string function_label;
  double size_fraction = 0.0;
  SizeClass size_class = SizeClass::tiny;
  eni::RoomScore capacity;
};

struct Asset {
  std::string name;
  double width = 1.0;   // footprint along the object's local x
  double length = 1.0;  // footprint along the object's local y (front/back axis)
  double height = 1.0;
  std::string category;
  std::vector<std::string> tags;  // room functions the asset suits

  double footprint_area() const { return width * length; }
};

inline constexpr double kScaleMin = 0.8;
inline constexpr double kScaleMax = 1.2;

struct PlacedObject {
  std::string id;
  std::string room;
  Asset asset;
  Point2 center;
  int yaw = 0;  // degrees, multiple of 90; the front faces +y at yaw 0
  double scale_x = 1.0;
  double scale_y = 1.0;

  double scale_z() const { return 0.5 * (scale_x + scale_y); }
  double size_x() const { return asset.width * scale_x; }
  double size_y() const { return asset.length * scale_y; }
  bool quarter_turned() const { return (((yaw / 90) % 2) + 2) % 2 == 1; }
  // World-axis extents of the footprint.
  double extent_x() const { return quarter_turned() ? size_y() : size_x(); }
  double extent_y() const { return quarter_turned() ? size_x() : size_y(); }
  double footprint_area() const { return size_x() * size_y(); }

  // Unit vector the object faces.
  Point2 front() const { return unit_vector(kPi / 2 + yaw * kPi / 180.0); }
};

inline Box footprint_box(const PlacedObject& o) {
  return Box::around(o.center, 0.5 * o.extent_x(), 0.5 * o.extent_y());
}

inline SimplePolygon footprint_polygon(const PlacedObject& o) { return footprint_box(o).polygon(); }

struct Layout {
  std::vector<Room> rooms;
  std::vector<PlacedObject> objects;
  std::vector<RelationSpec> relations;

  const Room* find_room(const std::string& id) const {
    for (const Room& r : rooms)
      if (r.id == id) return &r;
    return nullptr;
  }
  const PlacedObject* find_object(const std::string& id) const {
    for (const PlacedObject& o : objects)
      if (o.id == id) return &o;
    return nullptr;
  }
};

// Tolerance for containment (meters) and overlap (square meters) checks.
inline constexpr double kLayoutTolerance = 1e-6;

// Every machine-checkable invariant of a layout; empty when valid. With `virtual_env`, objects
// must also stay clear of its obstacles (columns inside a room polygon).
inline std::vector<std::string> validate(const Layout& layout,
                                         const Environment* virtual_env = nullptr) {
  std::vector<std::string> issues;
  for (const PlacedObject& o : layout.objects) {
    const Room* room = layout.find_room(o.room);
    if (room == nullptr) {
      issues.push_back(o.id + ": unknown room '" + o.room + "'");
      continue;
    }
    if (o.yaw % 90 != 0) issues.push_back(o.id + ": yaw is not a multiple of 90 degrees");
    for (double s : {o.scale_x, o.scale_y})
      if (s < kScaleMin - 1e-12 || s > kScaleMax + 1e-12)
        issues.push_back(o.id + ": scale outside [0.8, 1.2]");
    const Box box = footprint_box(o);
    if (!box_inside(box, room->polygon, kLayoutTolerance))
      issues.push_back(o.id + ": footprint leaves room " + o.room);
    if (virtual_env != nullptr)
      for (const SimplePolygon& obstacle : virtual_env->obstacles())
        if (box_overlaps(box, obstacle, kLayoutTolerance)) {
          issues.push_back(o.id + ": footprint overlaps a wall or obstacle");
          break;
        }
  }
  for (std::size_t i = 0; i < layout.objects.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const PlacedObject& a = layout.objects[i];
      const PlacedObject& b = layout.objects[j];
      if (a.id == b.id) issues.push_back(a.id + ": duplicate object id");
      if (overlap_area(footprint_box(a), footprint_box(b)) > kLayoutTolerance)
        issues.push_back(a.id + " overlaps " + b.id);
    }
  for (const RelationSpec& r : layout.relations) {
    if (layout.find_object(r.subject) == nullptr)
      issues.push_back("relation subject '" + r.subject + "' is not placed");
    if (const auto* oa = std::get_if<ObjectAnchor>(&r.anchor)) {
      if (oa->target == r.subject) issues.push_back(r.subject + ": relation refers to itself");
      else if (layout.find_object(oa->target) == nullptr)
        issues.push_back("relation target '" + oa->target + "' is not placed");
    }
  }
  return issues;
}

}  // namespace walkfit
