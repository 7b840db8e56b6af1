#pragma once

// Grid stand-in for room detection: walls (and the outline) are thickened by half a door gap
// so door openings close, the remaining free cells split into connected components, and the
// components are grown back over the thickened margin.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "walkfit/geometry/boolean.hpp"
#include "walkfit/geometry/visibility.hpp"
#include "walkfit/scene/layout.hpp"

namespace walkfit {

namespace segment_detail {

struct Grid {
  Point2 origin;
  double res = 0.1;
  int nx = 0;
  int ny = 0;
  std::vector<int> label;  // -1 blocked, -2 unassigned free, >= 0 component

  int at(int i, int j) const { return label[static_cast<std::size_t>(j) * nx + i]; }
  int& at(int i, int j) { return label[static_cast<std::size_t>(j) * nx + i]; }
  bool in(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
  Point2 center(int i, int j) const { return origin + Point2{(i + 0.5) * res, (j + 0.5) * res}; }
  Point2 corner(int i, int j) const { return origin + Point2{i * res, j * res}; }
};

constexpr int kDi[4] = {1, 0, -1, 0};
constexpr int kDj[4] = {0, 1, 0, -1};

// Outer boundary of the cells carrying `id`, counter-clockwise, collinear points removed.
// Where two cells of the region only touch at a corner the walk turns left, so each loop
// stays simple; the loop with the largest area is returned.
inline std::vector<Point2> trace_outline(const Grid& g, int id) {
  struct Edge {
    int x0, y0, x1, y1;
    bool used = false;
  };
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, std::vector<std::size_t>> from;
  auto add = [&](int x0, int y0, int x1, int y1) {
    from[{x0, y0}].push_back(edges.size());
    edges.push_back({x0, y0, x1, y1});
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (g.at(i, j) != id) continue;
      auto other = [&](int a, int b) { return !g.in(a, b) || g.at(a, b) != id; };
      if (other(i, j - 1)) add(i, j, i + 1, j);
      if (other(i + 1, j)) add(i + 1, j, i + 1, j + 1);
      if (other(i, j + 1)) add(i + 1, j + 1, i, j + 1);
      if (other(i - 1, j)) add(i, j + 1, i, j);
    }
  std::vector<Point2> best;
  double best_area = 0.0;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    if (edges[s].used) continue;
    std::vector<std::pair<int, int>> loop;
    std::size_t e = s;
    while (!edges[e].used) {
      edges[e].used = true;
      loop.push_back({edges[e].x0, edges[e].y0});
      const int dx = edges[e].x1 - edges[e].x0;
      const int dy = edges[e].y1 - edges[e].y0;
      std::size_t next = edges.size();
      int best_turn = -2;
      for (std::size_t c : from[{edges[e].x1, edges[e].y1}]) {
        if (edges[c].used && c != s) continue;
        const int cx = edges[c].x1 - edges[c].x0;
        const int cy = edges[c].y1 - edges[c].y0;
        const int turn = dx * cy - dy * cx;  // +1 left, 0 straight, -1 right
        if (turn > best_turn) {
          best_turn = turn;
          next = c;
        }
      }
      if (next == edges.size() || next == s) break;
      e = next;
    }
    std::vector<Point2> ring;
    for (const auto& [x, y] : loop) ring.push_back(g.corner(x, y));
    const double a = signed_area(ring);
    if (a > best_area) {
      best_area = a;
      best = ring;
    }
  }
  // Drop collinear vertices.
  std::vector<Point2> out;
  const std::size_t n = best.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 a = best[(k + n - 1) % n];
    const Point2 b = best[k];
    const Point2 c = best[(k + 1) % n];
    if (std::abs(orient(a, b, c)) > 1e-12) out.push_back(b);
  }
  return out;
}

inline std::string function_for(std::size_t rank, double fraction, const Box& bounds) {
  const double lo = std::min(bounds.width(), bounds.height());
  const double hi = std::max(bounds.width(), bounds.height());
  if (lo < 1.8 && hi >= 2.5 * lo) return "corridor";
  if (rank > 0 && fraction <= 0.1) return "bathroom";
  static const char* kByRank[] = {"living room", "bedroom", "kitchen", "study", "dining room"};
  return rank < 5 ? kByRank[rank] : "bedroom";
}

}  // namespace segment_detail

// Fills size fraction and size class from the virtual free area.
inline void classify_rooms(std::vector<Room>& rooms, double free_area) {
  for (Room& r : rooms) {
    r.size_fraction = std::min(1.0, r.polygon.area() / free_area);
    r.size_class = size_class(std::max(r.size_fraction, 1e-12));
  }
}

inline std::vector<Room> segment_rooms(const FloorPlan& fp, double resolution = 0.1) {
  using namespace segment_detail;
  if (!(resolution > 0.0)) throw ConfigError("grid resolution must be positive");
  const Environment env = floorplan_to_environment(fp);
  const auto [lo, hi] = fp.outline.bounds();
  Grid g;
  g.origin = lo;
  g.res = resolution;
  g.nx = static_cast<int>(std::ceil((hi.x - lo.x) / resolution - 1e-9));
  g.ny = static_cast<int>(std::ceil((hi.y - lo.y) / resolution - 1e-9));
  g.label.assign(static_cast<std::size_t>(g.nx) * g.ny, -1);

  const double closing = 0.5 * fp.door_gap_width + 1e-9;
  std::vector<char> open(g.label.size(), 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Point2 c = g.center(i, j);
      if (!env.inside_boundary(c) || env.inside_obstacle(c)) continue;
      g.at(i, j) = -2;
      open[static_cast<std::size_t>(j) * g.nx + i] = env.clearance(c) > closing;
    }

  // Components of the open cells.
  int count = 0;
  std::deque<std::pair<int, int>> queue;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!open[static_cast<std::size_t>(j) * g.nx + i] || g.at(i, j) != -2) continue;
      g.at(i, j) = count;
      queue.push_back({i, j});
      while (!queue.empty()) {
        const auto [a, b] = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
          const int u = a + kDi[k], v = b + kDj[k];
          if (g.in(u, v) && open[static_cast<std::size_t>(v) * g.nx + u] && g.at(u, v) == -2) {
            g.at(u, v) = count;
            queue.push_back({u, v});
          }
        }
      }
      ++count;
    }
  if (count == 0) throw InvalidGeometry("no rooms found in the floor plan");

  // Grow the components back over the closed margin, breadth first from all of them at once.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (g.at(i, j) >= 0) queue.push_back({i, j});
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    for (int k = 0; k < 4; ++k) {
      const int u = a + kDi[k], v = b + kDj[k];
      if (g.in(u, v) && g.at(u, v) == -2) {
        g.at(u, v) = g.at(a, b);
        queue.push_back({u, v});
      }
    }
  }

  // Merge components under 1 m² into the neighbour they share the longest border with;
  // isolated ones are dropped.
  const double cell_area = resolution * resolution;
  for (;;) {
    std::vector<int> cells(static_cast<std::size_t>(count), 0);
    for (int l : g.label)
      if (l >= 0) ++cells[static_cast<std::size_t>(l)];
    int smallest = -1;
    for (int l = 0; l < count; ++l)
      if (cells[l] > 0 && cells[l] * cell_area < 1.0 && (smallest < 0 || cells[l] < cells[smallest]))
        smallest = l;
    if (smallest < 0) break;
    std::vector<int> shared(static_cast<std::size_t>(count), 0);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        if (g.at(i, j) != smallest) continue;
        for (int k = 0; k < 4; ++k) {
          const int u = i + kDi[k], v = j + kDj[k];
          if (g.in(u, v) && g.at(u, v) >= 0 && g.at(u, v) != smallest) ++shared[g.at(u, v)];
        }
      }
    const int target = static_cast<int>(std::max_element(shared.begin(), shared.end()) - shared.begin());
    const int into = shared[target] > 0 ? target : -1;
    for (int& l : g.label)
      if (l == smallest) l = into;
  }

  // Renumber in scan order and polygonize.
  std::vector<int> order;
  for (int l : g.label)
    if (l >= 0 && std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
  std::vector<Room> rooms;
  for (int l : order) {
    const std::vector<Point2> ring = trace_outline(g, l);
    if (ring.size() < 3) continue;
    const PolygonSet clipped = intersection(SimplePolygon::from(ring), env.free_space());
    const PolygonWithHoles* largest = nullptr;
    for (const PolygonWithHoles& part : clipped.parts)
      if (largest == nullptr || part.area() > largest->area()) largest = &part;
    if (largest == nullptr || largest->outer.area() < 1e-6) continue;
    Room r;
    r.id = "room_" + std::to_string(rooms.size() + 1);
    r.polygon = SimplePolygon::from(detail::simplify_ring(largest->outer.vertices(), 1e-9));
    rooms.push_back(std::move(r));
  }
  if (rooms.empty()) throw InvalidGeometry("no rooms found in the floor plan");
  classify_rooms(rooms, env.free_area());

  std::vector<std::size_t> by_size(rooms.size());
  for (std::size_t i = 0; i < rooms.size(); ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return rooms[a].polygon.area() > rooms[b].polygon.area();
  });
  std::size_t rank = 0;
  for (std::size_t idx : by_size) {
    Room& r = rooms[idx];
    const auto [blo, bhi] = r.polygon.bounds();
    r.function_label = function_for(rank, r.size_fraction, Box{blo, bhi});
    if (r.function_label != "corridor") ++rank;
  }
  return rooms;
}

}  // namespace walkfit
