#pragma once

// Five built-in scene pairs with the study's area ratios. The physical room is 4.0 x 3.6 m
// (5.0 x 5.0 m for the first pair); walls are 0.1 m thick with 0.9 m doors.
//
//   exp1  virtual 4.0 x 3.6, 2 rooms    physical 5.0 x 5.0 (contains the virtual space)
//   exp2  virtual 4.0 x 3.6, 2 rooms    physical 4.0 x 3.6 (same outline)
//   exp3  virtual 6.0 x 3.6, 3 rooms    physical 4.0 x 3.6 (1.5x on one axis)
//   exp4  virtual 6.0 x 5.4, 4 rooms    physical 4.0 x 3.6 (1.5x on both axes)
//   exp5  virtual 8.0 x 7.2, 5 rooms    physical 4.0 x 3.6 (2x on both axes)

#include <string>
#include <vector>

#include "walkfit/scene/io.hpp"

namespace walkfit::pipeline {

inline constexpr double kWallThickness = 0.1;
inline constexpr double kDoorWidth = 0.9;

namespace reference_detail {

inline SimplePolygon rect(double x0, double y0, double x1, double y1) {
  return SimplePolygon::rectangle({x0, y0}, {x1, y1});
}

// Wall along x = `at` from y0 to y1 (or along y when `horizontal`), with a door centered on the span.
inline void wall(std::vector<SimplePolygon>& out, bool horizontal, double at, double from, double to) {
  const double h = 0.5 * kWallThickness;
  const double mid = 0.5 * (from + to);
  const double d0 = mid - 0.5 * kDoorWidth, d1 = mid + 0.5 * kDoorWidth;
  for (auto [a, b] : {std::pair{from, d0}, std::pair{d1, to}}) {
    if (b - a < 1e-9) continue;
    out.push_back(horizontal ? rect(a, at - h, b, at + h) : rect(at - h, a, at + h, b));
  }
}

inline Room room(std::string id, std::string function, double x0, double y0, double x1, double y1) {
  Room r;
  r.id = std::move(id);
  r.function_label = std::move(function);
  r.polygon = rect(x0, y0, x1, y1);
  return r;
}

inline SceneBundle bundle(std::string name, double pw, double ph, double vw, double vh, std::vector<SimplePolygon> walls,
                          std::vector<Room> rooms) {
  SceneBundle s;
  s.name = std::move(name);
  s.physical = Environment::make(rect(0, 0, pw, ph), {});
  s.virtual_plan.outline = rect(0, 0, vw, vh);
  s.virtual_plan.walls = std::move(walls);
  s.virtual_plan.door_gap_width = kDoorWidth;
  s.rooms = std::move(rooms);
  s.catalog_path = "catalog.json";
  return s;
}

}  // namespace reference_detail

inline std::vector<SceneBundle> reference_scenes() {
  using namespace reference_detail;
  const double h = 0.5 * kWallThickness;
  std::vector<SceneBundle> out;

  auto two_rooms = [&](std::string name, double pw, double ph) {
    std::vector<SimplePolygon> w;
    wall(w, false, 2.4, 0.0, 3.6);
    return bundle(std::move(name), pw, ph, 4.0, 3.6, w,
                  {room("room_1", "living room", 0, 0, 2.4 - h, 3.6), room("room_2", "bedroom", 2.4 + h, 0, 4.0, 3.6)});
  };
  out.push_back(two_rooms("exp1", 5.0, 5.0));
  out.push_back(two_rooms("exp2", 4.0, 3.6));

  {
    std::vector<SimplePolygon> w;
    wall(w, false, 2.4, 0.0, 3.6);
    wall(w, false, 4.2, 0.0, 3.6);
    out.push_back(bundle("exp3", 4.0, 3.6, 6.0, 3.6, w,
                         {room("room_1", "living room", 0, 0, 2.4 - h, 3.6),
                          room("room_2", "kitchen", 2.4 + h, 0, 4.2 - h, 3.6),
                          room("room_3", "bedroom", 4.2 + h, 0, 6.0, 3.6)}));
  }
  {
    std::vector<SimplePolygon> w;
    wall(w, false, 3.0, 0.0, 2.7 - h);
    wall(w, false, 3.0, 2.7 + h, 5.4);
    wall(w, true, 2.7, 0.0, 3.0 - h);
    wall(w, true, 2.7, 3.0 + h, 6.0);
    w.push_back(rect(3.0 - h, 2.7 - h, 3.0 + h, 2.7 + h));
    out.push_back(bundle("exp4", 4.0, 3.6, 6.0, 5.4, w,
                         {room("room_1", "living room", 0, 0, 3.0 - h, 2.7 - h),
                          room("room_2", "kitchen", 3.0 + h, 0, 6.0, 2.7 - h),
                          room("room_3", "bedroom", 0, 2.7 + h, 3.0 - h, 5.4),
                          room("room_4", "study", 3.0 + h, 2.7 + h, 6.0, 5.4)}));
  }
  {
    std::vector<SimplePolygon> w;
    wall(w, false, 4.0, 0.0, 3.6 - h);
    wall(w, false, 4.0, 3.6 + h, 7.2);
    wall(w, true, 3.6, 0.0, 4.0 - h);
    wall(w, true, 3.6, 4.0 + h, 6.0 - h);
    wall(w, true, 3.6, 6.0 + h, 8.0);
    w.push_back(rect(4.0 - h, 3.6 - h, 4.0 + h, 3.6 + h));
    wall(w, false, 6.0, 0.0, 3.6 - h);
    w.push_back(rect(6.0 - h, 3.6 - h, 6.0 + h, 3.6 + h));
    out.push_back(bundle("exp5", 4.0, 3.6, 8.0, 7.2, w,
                         {room("room_1", "living room", 0, 0, 4.0 - h, 3.6 - h),
                          room("room_2", "dining room", 0, 3.6 + h, 4.0 - h, 7.2),
                          room("room_3", "bedroom", 4.0 + h, 3.6 + h, 8.0, 7.2),
                          room("room_4", "study", 4.0 + h, 0, 6.0 - h, 3.6 - h),
                          room("room_5", "kitchen", 6.0 + h, 0, 8.0, 3.6 - h)}));
  }
  return out;
}

}  // namespace walkfit::pipeline
