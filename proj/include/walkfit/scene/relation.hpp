#pragma once

// Spatial relation vocabulary shared by layout generation and placement.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "walkfit/geometry/polygon.hpp"

namespace walkfit {

enum class RoomAnchorKind { near_wall, far_wall, middle, corner };

enum class ObjectAnchorKind {
  left,
  top,
  right,
  bottom,
  front,
  behind,
  top_left,
  top_right,
  bottom_left,
  bottom_right,
  top_center,
  bottom_center,
};

struct RoomAnchor {
  RoomAnchorKind kind = RoomAnchorKind::middle;
  int wall = -1;   // edge index of the room polygon
  int wall2 = -1;  // second edge for corners
};

struct ObjectAnchor {
  ObjectAnchorKind kind = ObjectAnchorKind::left;
  std::string target;
};

struct RelationSpec {
  std::string subject;
  std::variant<RoomAnchor, ObjectAnchor> anchor;

  bool is_room_anchor() const { return std::holds_alternative<RoomAnchor>(anchor); }
};

inline constexpr std::array<std::pair<ObjectAnchorKind, std::string_view>, 12> kObjectAnchorNames{{
    {ObjectAnchorKind::top_left, "top-left"},
    {ObjectAnchorKind::top_right, "top-right"},
    {ObjectAnchorKind::bottom_left, "bottom-left"},
    {ObjectAnchorKind::bottom_right, "bottom-right"},
    {ObjectAnchorKind::top_center, "top-center"},
    {ObjectAnchorKind::bottom_center, "bottom-center"},
    {ObjectAnchorKind::left, "left"},
    {ObjectAnchorKind::top, "top"},
    {ObjectAnchorKind::right, "right"},
    {ObjectAnchorKind::bottom, "bottom"},
    {ObjectAnchorKind::front, "front"},
    {ObjectAnchorKind::behind, "behind"},
}};

inline std::string_view to_string(ObjectAnchorKind k) {
  for (const auto& [kind, name] : kObjectAnchorNames)
    if (kind == k) return name;
  return "left";
}

inline std::optional<ObjectAnchorKind> object_anchor_from(std::string_view s) {
  for (const auto& [kind, name] : kObjectAnchorNames)
    if (name == s) return kind;
  return std::nullopt;
}

inline std::string_view to_string(RoomAnchorKind k) {
  switch (k) {
    case RoomAnchorKind::near_wall: return "near_wall";
    case RoomAnchorKind::far_wall: return "far_wall";
    case RoomAnchorKind::middle: return "middle";
    case RoomAnchorKind::corner: return "corner";
  }
  return "middle";
}

inline std::optional<RoomAnchorKind> room_anchor_from(std::string_view s) {
  for (RoomAnchorKind k : {RoomAnchorKind::near_wall, RoomAnchorKind::far_wall,
                           RoomAnchorKind::middle, RoomAnchorKind::corner})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

// Axis-aligned rectangles get compass names from each edge's outward normal; other rooms
// number their edges.
inline bool is_axis_rectangle(const SimplePolygon& p) {
  if (p.size() != 4) return false;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 d = p.edge_end(i) - p.edge_start(i);
    if (std::abs(d.x) > 1e-9 && std::abs(d.y) > 1e-9) return false;
  }
  return true;
}

inline std::vector<std::string> wall_names(const SimplePolygon& room) {
  std::vector<std::string> names;
  const bool rect = is_axis_rectangle(room);
  for (std::size_t i = 0; i < room.size(); ++i) {
    if (!rect) {
      names.push_back("wall " + std::to_string(i));
      continue;
    }
    const Point2 d = room.edge_end(i) - room.edge_start(i);
    const Point2 normal{d.y, -d.x};  // outward for counter-clockwise rings
    if (std::abs(normal.y) > std::abs(normal.x))
      names.push_back(normal.y > 0 ? "upper" : "lower");
    else
      names.push_back(normal.x > 0 ? "right" : "left");
  }
  return names;
}

// Accepts the canonical names plus "top"/"bottom" for upper/lower.
inline std::optional<int> wall_index(const SimplePolygon& room, std::string name) {
  if (name == "top") name = "upper";
  if (name == "bottom") name = "lower";
  const std::vector<std::string> names = wall_names(room);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

}  // namespace walkfit
