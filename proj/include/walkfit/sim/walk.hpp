#pragma once

// Synthetic exploration tours through the walkable part of a furnished virtual space.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "walkfit/scene/layout.hpp"

namespace walkfit::sim {

struct WalkOptions {
  double grid = 0.2;         // planning grid resolution (m)
  double body_margin = 0.25;  // clearance kept from walls and furniture
  int waypoints_per_room = 2;  // per round
  double min_length = 60.0;    // tour length (m); the first full round is never cut
  double speed = 1.0;  // m/s
  double dt = 0.05;    // s

  void validate() const {
    if (!(grid > 0.0) || !(speed > 0.0) || !(dt > 0.0) || body_margin < 0.0 || waypoints_per_room < 1 ||
        min_length < 0.0)
      throw ConfigError("walk options must be positive");
  }
};

struct WalkPlan {
  std::vector<Point2> waypoints;      // polyline the walker follows
  std::vector<std::string> visits;    // room of every planned stop, in visiting order
  std::vector<std::string> warnings;
  double speed = 1.0;
  double dt = 0.05;
};

// Occupancy grid of walkable cells.
class WalkGrid {
 public:
  WalkGrid(const Environment& env, const std::vector<PlacedObject>& objects, const WalkOptions& opt)
      : res_(opt.grid) {
    const auto [lo, hi] = env.boundary().bounds();
    origin_ = lo;
    nx_ = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / res_)));
    ny_ = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / res_)));
    std::vector<Box> blocked;
    for (const PlacedObject& o : objects) {
      const Box b = footprint_box(o);
      blocked.push_back({b.lo - Point2{opt.body_margin, opt.body_margin}, b.hi + Point2{opt.body_margin, opt.body_margin}});
    }
    free_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) {
        const Point2 c = center(i, j);
        bool ok = env.in_free_space(c, opt.body_margin);
        for (const Box& b : blocked) ok = ok && !b.contains_closed(c);
        free_[idx(i, j)] = ok;
      }
    label_components();
  }

  // Cells of the largest 8-connected walkable region; pockets cut off by furniture are left out.
  bool in_main(int i, int j) const { return walkable(i, j) && comp_[idx(i, j)] == main_; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  bool walkable(int i, int j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_ && free_[idx(i, j)]; }
  Point2 center(int i, int j) const { return origin_ + Point2{(i + 0.5) * res_, (j + 0.5) * res_}; }
  std::pair<int, int> cell(Point2 p) const {
    return {static_cast<int>(std::floor((p.x - origin_.x) / res_)), static_cast<int>(std::floor((p.y - origin_.y) / res_))};
  }

  bool line_walkable(Point2 a, Point2 b) const {
    const int n = std::max(1, static_cast<int>(std::ceil(distance(a, b) / (0.25 * res_))));
    for (int k = 0; k <= n; ++k) {
      const auto [i, j] = cell(a + (b - a) * (static_cast<double>(k) / n));
      if (!walkable(i, j)) return false;
    }
    return true;
  }

  // Cell path by A* with 8 neighbours; diagonals need both side cells free.
  std::vector<std::pair<int, int>> path(std::pair<int, int> from, std::pair<int, int> to) const {
    const std::size_t n = free_.size();
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> parent(n, -1);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    auto h = [&](int i, int j) { return std::hypot(i - to.first, j - to.second); };
    g[idx(from.first, from.second)] = 0.0;
    open.push({h(from.first, from.second), idx(from.first, from.second)});
    const std::size_t goal = idx(to.first, to.second);
    while (!open.empty()) {
      const auto [f, cur] = open.top();
      open.pop();
      if (cur == goal) break;
      const int ci = static_cast<int>(cur % nx_), cj = static_cast<int>(cur / nx_);
      if (f - h(ci, cj) > g[cur] + 1e-9) continue;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ni = ci + di, nj = cj + dj;
          if (!walkable(ni, nj)) continue;
          if (di != 0 && dj != 0 && (!walkable(ci + di, cj) || !walkable(ci, cj + dj))) continue;
          const double ng = g[cur] + ((di != 0 && dj != 0) ? std::sqrt(2.0) : 1.0);
          const std::size_t k = idx(ni, nj);
          if (ng < g[k] - 1e-12) {
            g[k] = ng;
            parent[k] = static_cast<std::int64_t>(cur);
            open.push({ng + h(ni, nj), k});
          }
        }
    }
    std::vector<std::pair<int, int>> out;
    if (!std::isfinite(g[goal])) return out;
    for (std::int64_t k = static_cast<std::int64_t>(goal); k >= 0; k = parent[static_cast<std::size_t>(k)])
      out.push_back({static_cast<int>(k % nx_), static_cast<int>(k / nx_)});
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  void label_components() {
    comp_.assign(free_.size(), -1);
    std::vector<std::size_t> size;
    for (std::size_t start = 0; start < free_.size(); ++start) {
      if (!free_[start] || comp_[start] >= 0) continue;
      const int c = static_cast<int>(size.size());
      size.push_back(0);
      std::vector<std::size_t> stack{start};
      comp_[start] = c;
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        ++size[c];
        const int ci = static_cast<int>(cur % nx_), cj = static_cast<int>(cur / nx_);
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            const int ni = ci + di, nj = cj + dj;
            if (!walkable(ni, nj) || comp_[idx(ni, nj)] >= 0) continue;
            if (di != 0 && dj != 0 && (!walkable(ci + di, cj) || !walkable(ci, cj + dj))) continue;
            comp_[idx(ni, nj)] = c;
            stack.push_back(idx(ni, nj));
          }
      }
    }
    for (std::size_t c = 0; c < size.size(); ++c)
      if (main_ < 0 || size[c] > size[static_cast<std::size_t>(main_)]) main_ = static_cast<int>(c);
  }

  Point2 origin_;
  double res_;
  int nx_ = 0, ny_ = 0;
  std::vector<char> free_;
  std::vector<int> comp_;
  int main_ = -1;
};

namespace walk_detail {

// Pulls a cell path taut: from each kept point jump to the farthest visible one.
inline std::vector<Point2> taut(const WalkGrid& grid, const std::vector<std::pair<int, int>>& cells) {
  std::vector<Point2> pts, out;
  for (const auto& [i, j] : cells) pts.push_back(grid.center(i, j));
  if (pts.empty()) return out;
  out.push_back(pts[0]);
  for (std::size_t i = 0; i + 1 < pts.size();) {
    std::size_t j = i + 1;
    while (j + 1 < pts.size() && grid.line_walkable(pts[i], pts[j + 1])) ++j;
    if (distance(pts[j], out.back()) > 1e-12) out.push_back(pts[j]);
    i = j;
  }
  return out;
}

inline double length(const std::vector<Point2>& pts) {
  double l = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) l += distance(pts[i - 1], pts[i]);
  return l;
}

}  // namespace walk_detail

// A tour of the main walkable region: one full round visits `waypoints_per_room` random cells in
// every room, rooms in a seed-shuffled order; further stops follow the same scheme until the tour
// is `min_length` long, and the polyline is cut there. Walks through different layouts therefore
// cover the same distance unless the first round alone is longer.
inline WalkPlan generate_walk(const Environment& virtual_env, const Layout& layout, std::uint64_t seed,
                              const WalkOptions& opt = {}) {
  opt.validate();
  WalkPlan plan;
  plan.speed = opt.speed;
  plan.dt = opt.dt;
  const WalkGrid grid(virtual_env, layout.objects, opt);
  std::mt19937_64 rng(seed);

  std::vector<std::vector<std::pair<int, int>>> room_cells;
  std::vector<std::size_t> rooms;
  for (std::size_t r = 0; r < layout.rooms.size(); ++r) {
    const Room& room = layout.rooms[r];
    std::vector<std::pair<int, int>> cells;
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i)
        if (grid.in_main(i, j) && room.polygon.contains(grid.center(i, j))) cells.push_back({i, j});
    if (cells.empty())
      plan.warnings.push_back(room.id + ": no walkable space, skipped");
    else
      rooms.push_back(r);
    room_cells.push_back(std::move(cells));
  }
  if (rooms.empty()) return plan;

  std::vector<std::pair<int, int>> cells;
  std::size_t first_round = 0;     // cells of the first full round
  double grid_length = 0.0;
  double target = opt.min_length;  // grid length to reach; raised when the taut path falls short
  double floor = 0.0;              // taut length of the first round
  auto pull_taut = [&] {
    plan.waypoints = walk_detail::taut(grid, {cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(first_round)});
    floor = walk_detail::length(plan.waypoints);
    if (first_round < cells.size()) {
      // Pulled taut on its own so the cut never falls inside the first round.
      const auto rest =
          walk_detail::taut(grid, {cells.begin() + static_cast<std::ptrdiff_t>(first_round) - 1, cells.end()});
      plan.waypoints.insert(plan.waypoints.end(), rest.begin() + 1, rest.end());
    }
    return walk_detail::length(plan.waypoints);
  };
  constexpr int kMaxRounds = 100;
  for (int round = 0; round < kMaxRounds; ++round) {
    for (std::size_t i = rooms.size(); i > 1; --i) std::swap(rooms[i - 1], rooms[rng() % i]);
    for (std::size_t r : rooms)
      for (int k = 0; k < opt.waypoints_per_room; ++k) {
        if (round > 0 && grid_length >= target) break;
        const auto& pool = room_cells[r];
        const auto stop = pool[rng() % pool.size()];
        if (cells.empty()) {
          cells.push_back(stop);
        } else {
          const auto p = grid.path(cells.back(), stop);
          for (std::size_t q = 1; q < p.size(); ++q) {
            grid_length +=
                distance(grid.center(p[q - 1].first, p[q - 1].second), grid.center(p[q].first, p[q].second));
            cells.push_back(p[q]);
          }
        }
        plan.visits.push_back(layout.rooms[r].id);
      }
    if (round == 0) first_round = cells.size();
    if (grid_length >= target) {
      const double l = pull_taut();
      if (l >= opt.min_length) break;
      target = grid_length + 1.5 * (opt.min_length - l);
    }
  }
  pull_taut();

  const double limit = std::max(floor, opt.min_length);
  double walked = 0.0;
  for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
    const double d = distance(plan.waypoints[i - 1], plan.waypoints[i]);
    if (walked + d > limit) {
      const Point2 a = plan.waypoints[i - 1];
      plan.waypoints[i] = a + (plan.waypoints[i] - a) * ((limit - walked) / d);
      plan.waypoints.resize(i + 1);
      break;
    }
    walked += d;
  }
  return plan;
}

}  // namespace walkfit::sim
