#pragma once

// Rule-based check of one room's asset selection.

#include <algorithm>
#include <string>
#include <vector>

#include "walkfit/scene/layout.hpp"

namespace walkfit::layout {

struct ValidationVerdict {
  bool ok = true;
  std::string reason;
  std::vector<std::string> change;
  std::vector<std::string> remove;
};

struct SelectionRules {
  double area_cap = 0.6;        // summed footprints over room area
  double tiny_item_share = 0.1;  // per-item footprint cap in tiny rooms
};

// An asset fits if some 90-degree orientation of its unscaled footprint fits the room's box.
inline bool fits_box(const Asset& a, double room_w, double room_l) {
  return (a.width <= room_w + 1e-9 && a.length <= room_l + 1e-9) ||
         (a.length <= room_w + 1e-9 && a.width <= room_l + 1e-9);
}

inline ValidationVerdict validate_selection(const Room& room, const std::vector<Asset>& assets,
                                            const SelectionRules& rules = {}) {
  ValidationVerdict v;
  const auto [lo, hi] = room.polygon.bounds();
  const double w = hi.x - lo.x;
  const double l = hi.y - lo.y;
  const double area = room.polygon.area();
  auto flag = [](std::vector<std::string>& list, const std::string& name) {
    if (std::find(list.begin(), list.end(), name) == list.end()) list.push_back(name);
  };
  auto note = [&](const std::string& s) { v.reason += (v.reason.empty() ? "" : "; ") + s; };

  for (const Asset& a : assets)
    if (!fits_box(a, w, l)) {
      note(a.name + " is larger than the room in one direction");
      flag(v.change, a.name);
    }
  if (room.size_class == SizeClass::tiny)
    for (const Asset& a : assets)
      if (a.footprint_area() > rules.tiny_item_share * area + 1e-12) {
        note(a.name + " is too big for a tiny room");
        flag(v.change, a.name);
      }
  double total = 0.0;
  for (const Asset& a : assets) total += a.footprint_area();
  if (total > rules.area_cap * area + 1e-12 && !assets.empty()) {
    note("the objects together cover too much of the floor");
    const auto largest = std::max_element(assets.begin(), assets.end(), [](const Asset& a, const Asset& b) {
      return a.footprint_area() < b.footprint_area();
    });
    flag(v.remove, largest->name);
  }
  v.ok = v.change.empty() && v.remove.empty();
  return v;
}

}  // namespace walkfit::layout
