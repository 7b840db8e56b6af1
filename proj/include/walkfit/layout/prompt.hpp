#pragma once

// Prompt text for object selection, selection repair and spatial relations, plus the canonical
// printers for the two response grammars.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "walkfit/eni/export.hpp"
#include "walkfit/scene/layout.hpp"

namespace walkfit::layout {

struct RoomBrief {
  std::string room_id;
  std::string label;  // unique per house, e.g. "bedroom 2"; keys the response lists
  std::string function_label;
  SizeClass size_class = SizeClass::medium;
  std::optional<int> min_items;  // absent when the metric is not used
  double width = 0.0;            // bounding box of the room
  double length = 0.0;
  double area = 0.0;  // floor area of the room polygon
  std::vector<std::string> walls;
};

// Lowest item count for a room: normalized capacity divided by the virtual/physical area ratio.
inline int min_items(int normalized, double area_virtual, double area_physical) {
  if (!(area_virtual > 0.0) || !(area_physical > 0.0))
    throw ConfigError("areas must be positive");
  const double q = normalized / (area_virtual / area_physical);
  return std::max(1, static_cast<int>(std::ceil(q - 1e-9)));
}

// Briefs for every room; labels get a numeric suffix when a function repeats.
inline std::vector<RoomBrief> make_briefs(const std::vector<Room>& rooms,
                                          const std::vector<int>* min_counts = nullptr) {
  std::vector<RoomBrief> out;
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const Room& r = rooms[i];
    RoomBrief b;
    b.room_id = r.id;
    b.function_label = r.function_label;
    int seen = 0;
    for (std::size_t j = 0; j < i; ++j) seen += rooms[j].function_label == r.function_label;
    b.label = seen == 0 ? r.function_label : r.function_label + " " + std::to_string(seen + 1);
    b.size_class = r.size_class;
    if (min_counts != nullptr) b.min_items = (*min_counts)[i];
    const auto [lo, hi] = r.polygon.bounds();
    b.width = hi.x - lo.x;
    b.length = hi.y - lo.y;
    b.area = r.polygon.area();
    b.walls = wall_names(r.polygon);
    out.push_back(std::move(b));
  }
  return out;
}

inline std::string dims(double w, double l) {
  return "(" + eni::fmt_fixed(w, 1) + "*" + eni::fmt_fixed(l, 1) + ")";
}

// "(4.00*3.60, 14.40 m2)"; two decimals so a reader can size items against the real room.
inline std::string room_dims(const RoomBrief& b) {
  return "(" + eni::fmt_fixed(b.width, 2) + "*" + eni::fmt_fixed(b.length, 2) + ", " +
         eni::fmt_fixed(b.area, 2) + " m2)";
}

inline std::string article(std::string_view word) {
  return (!word.empty() && std::string_view("aeiou").find(word[0]) != std::string_view::npos) ? "an"
                                                                                               : "a";
}

inline const char* kObjectSystem =
    "You are an interior designer furnishing a virtual apartment. For every room you get its "
    "function, a size word, its footprint in meters and possibly a lowest number of items. List "
    "the objects that belong in each room, chosen from the available assets. Reply with one line "
    "per room in the form: room label (object, object, ...). Write nothing else.";

inline std::string build_object_prompt(const std::vector<RoomBrief>& briefs,
                                       const std::vector<std::string>& asset_names) {
  if (briefs.empty()) throw ConfigError("no rooms to furnish");
  std::string s = "Example:\nInput: An apartment contains:\n- a huge living room (6.0*5.0, 30.0 m2) with at least 5 items\n"
                  "Output: living room (sofa, coffee table, tv stand, bookshelf, armchair, floor lamp)\n\n"
                  "Input: An apartment contains:\n";
  for (const RoomBrief& b : briefs) {
    const std::string size(to_string(b.size_class));
    s += "- " + article(size) + " " + size + " " + b.label + " " + room_dims(b);
    if (b.min_items) s += " with at least " + std::to_string(*b.min_items) + " items";
    s += "\n";
  }
  s += "Available assets: ";
  for (std::size_t i = 0; i < asset_names.size(); ++i) s += (i ? ", " : "") + asset_names[i];
  return s + "\nOutput:";
}

struct SizedName {
  std::string name;
  double width = 0.0;
  double length = 0.0;
};

// Follow-up after a rejected selection.
inline std::string build_replacement_prompt(const RoomBrief& b, const std::vector<SizedName>& current,
                                            const std::string& reason,
                                            const std::vector<std::string>& change,
                                            const std::vector<std::string>& remove) {
  std::string s = "The selection for " + b.label + " " + room_dims(b) + " was rejected: " +
                  reason + "\nCurrent: " + b.label + " (";
  for (std::size_t i = 0; i < current.size(); ++i)
    s += (i ? ", " : "") + current[i].name + " " + dims(current[i].width, current[i].length);
  s += ")\nChange Suggestion: ";
  for (std::size_t i = 0; i < change.size(); ++i) s += (i ? ", " : "") + change[i];
  if (change.empty()) s += "None";
  s += ". Delete Suggestion: ";
  for (std::size_t i = 0; i < remove.size(); ++i) s += (i ? ", " : "") + remove[i];
  if (remove.empty()) s += "None";
  s += ".\nReply with the corrected list for this room only, in the same format.\nOutput:";
  return s;
}

inline const char* kRelationSystem =
    "You are an interior designer. Given the objects of a room, describe where each one goes, "
    "relative to the walls of the room or to another object. Use only these relations: near X "
    "wall, far from X wall, middle of the room, corner of X wall and Y wall, and left, top, right, "
    "bottom, front, behind, top-left, top-right, bottom-left, bottom-right, top-center, "
    "bottom-center of an object. Reply in the form: room label (object relation, ...). Write "
    "nothing else.";

inline std::string build_relation_prompt(const RoomBrief& b, const std::vector<SizedName>& objects) {
  std::string s = "Example:\nInput: living room (6.0*5.0; walls: upper, lower, left, right) "
                  "(sofa (2.0*0.9), coffee table (1.1*0.6), bookshelf (1.0*0.4))\n"
                  "Output: living room (sofa near upper wall, coffee table front of sofa, "
                  "bookshelf near to right wall)\n\nInput: " +
                  b.label + " (" + eni::fmt_fixed(b.width, 1) + "*" + eni::fmt_fixed(b.length, 1) +
                  "; walls: ";
  for (std::size_t i = 0; i < b.walls.size(); ++i) s += (i ? ", " : "") + b.walls[i];
  s += ") (";
  for (std::size_t i = 0; i < objects.size(); ++i)
    s += (i ? ", " : "") + objects[i].name + " " + dims(objects[i].width, objects[i].length);
  return s + ")\nOutput:";
}

inline std::string format_object_lists(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& lists) {
  std::string s;
  for (const auto& [label, items] : lists) {
    s += label + " (";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    s += ")\n";
  }
  return s;
}

// Clause text of one relation, with object subjects/targets given by instance name.
inline std::string format_relation(const RelationSpec& r, const std::vector<std::string>& walls) {
  if (const auto* ra = std::get_if<RoomAnchor>(&r.anchor)) {
    auto wall = [&](int k) { return walls.at(static_cast<std::size_t>(k)) + " wall"; };
    switch (ra->kind) {
      case RoomAnchorKind::near_wall: return r.subject + " near " + wall(ra->wall);
      case RoomAnchorKind::far_wall: return r.subject + " far from " + wall(ra->wall);
      case RoomAnchorKind::middle: return r.subject + " middle of the room";
      case RoomAnchorKind::corner:
        return r.subject + " corner of " + wall(ra->wall) + " and " + wall(ra->wall2);
    }
  }
  const auto& oa = std::get<ObjectAnchor>(r.anchor);
  return r.subject + " " + std::string(to_string(oa.kind)) + " of " + oa.target;
}

inline std::string format_relations(const std::string& label, const std::vector<RelationSpec>& rs,
                                    const std::vector<std::string>& walls) {
  std::string s = label + " (";
  for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? ", " : "") + format_relation(rs[i], walls);
  return s + ")\n";
}

}  // namespace walkfit::layout
