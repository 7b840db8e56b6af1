#pragma once

// Coverage of score-map samples by footprints, and the greedy local search that lowers the mean
// score of the samples left uncovered.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "walkfit/eni/summary.hpp"
#include "walkfit/placement/place.hpp"

namespace walkfit::placement {

struct CoverageIndex {
  std::vector<std::vector<std::size_t>> per_object;  // sample indices under each footprint
  std::vector<char> covered;
  std::vector<std::size_t> uncovered;
};

// Closed footprints: a sample on an edge is covered.
inline std::vector<std::size_t> covered_by(const Box& b, const std::vector<Point2>& pts) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (b.contains_closed(pts[i])) out.push_back(i);
  return out;
}

inline CoverageIndex coverage(const std::vector<PlacedObject>& objects, const eni::ScoreMap& map) {
  CoverageIndex c;
  c.covered.assign(map.size(), 0);
  for (const PlacedObject& o : objects) {
    c.per_object.push_back(covered_by(footprint_box(o), map.virtual_points));
    for (std::size_t i : c.per_object.back()) c.covered[i] = 1;
  }
  for (std::size_t i = 0; i < map.size(); ++i)
    if (!c.covered[i]) c.uncovered.push_back(i);
  return c;
}

inline double objective(const std::vector<PlacedObject>& objects, const eni::ScoreMap& map) {
  return eni::map_summary(map, coverage(objects, map).covered).uncovered_mean;
}

struct RefineResult {
  std::vector<double> trace;  // objective before the first and after every accepted iteration
  int iterations = 0;
  int accepted = 0;
};

// Greedy search over all objects of the layout. Each iteration tries, for every object, a step
// of ±refine_step in x and y and ±scale_step on each world axis, and applies the single best
// proposal if it strictly lowers the objective while the object stays inside its room, clear of
// obstacles and other objects, and every relation stays satisfied.
inline RefineResult eni_refine(std::vector<PlacedObject>& objects, const std::vector<RoomSpace>& spaces,
                               const std::vector<RelationSpec>& relations, const eni::ScoreMap& map,
                               const PlacementConfig& cfg = {}) {
  using namespace place_detail;
  cfg.validate();
  RefineResult res;
  const std::size_t n = map.size();
  auto space_of = [&](const PlacedObject& o) -> const RoomSpace& {
    for (const RoomSpace& s : spaces)
      if (s.room.id == o.room) return s;
    throw ConfigError("object " + o.id + " refers to an unknown room");
  };

  std::vector<int> count(n, 0);
  std::vector<std::vector<std::size_t>> cover(objects.size());
  double unc_sum = 0.0;
  std::size_t unc_cnt = 0;
  for (std::size_t k = 0; k < objects.size(); ++k) {
    cover[k] = covered_by(footprint_box(objects[k]), map.virtual_points);
    for (std::size_t i : cover[k]) ++count[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] == 0) unc_sum += map.scores[i], ++unc_cnt;
  auto mean = [](double s, std::size_t c) { return c == 0 ? 0.0 : s / static_cast<double>(c); };
  double current = mean(unc_sum, unc_cnt);
  res.trace.push_back(current);

  // Relations touching each object.
  std::vector<std::vector<const RelationSpec*>> touching(objects.size());
  for (const RelationSpec& r : relations)
    for (std::size_t k = 0; k < objects.size(); ++k) {
      const auto* oa = std::get_if<ObjectAnchor>(&r.anchor);
      if (r.subject == objects[k].id || (oa && oa->target == objects[k].id)) touching[k].push_back(&r);
    }

  // Fixed visiting order drawn once from the seed.
  std::vector<std::size_t> order(objects.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(cfg.rng_seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

  struct Move {
    Point2 shift;
    int axis = -1;  // scale change on this world axis when >= 0
    double ds = 0.0;
  };
  std::vector<Move> moves{{{cfg.refine_step, 0}}, {{-cfg.refine_step, 0}}, {{0, cfg.refine_step}},
                          {{0, -cfg.refine_step}}};
  for (int axis = 0; axis < 2; ++axis)
    for (double ds : {cfg.scale_step, -cfg.scale_step}) moves.push_back({{0, 0}, axis, ds});

  for (int iter = 0; iter < cfg.refine_iters; ++iter) {
    ++res.iterations;
    double best = current;
    std::size_t best_k = objects.size();
    PlacedObject best_obj;
    std::vector<std::size_t> best_cover;
    for (std::size_t k : order) {
      const PlacedObject saved = objects[k];
      const RoomSpace& space = space_of(saved);
      for (const Move& mv : moves) {
        PlacedObject cand = saved;
        if (mv.axis < 0) {
          cand.center = saved.center + mv.shift;
        } else {
          const double s = world_scale(saved, mv.axis) + mv.ds;
          if (s < cfg.scale_min - 1e-12 || s > cfg.scale_max + 1e-12) continue;
          const double base = (mv.axis == 0) != saved.quarter_turned() ? saved.asset.width : saved.asset.length;
          set_world_extent(cand, mv.axis, base * s);
        }
        const Box f = footprint_box(cand);
        if (!clear_at(space, objects, k, f)) continue;
        // Objective change from swapping this object's coverage.
        std::vector<std::size_t> cov = covered_by(f, map.virtual_points);
        double s = unc_sum;
        std::ptrdiff_t c = static_cast<std::ptrdiff_t>(unc_cnt);
        for (std::size_t i : cover[k]) --count[i];
        for (std::size_t i : cover[k])
          if (count[i] == 0 && !std::binary_search(cov.begin(), cov.end(), i)) s += map.scores[i], ++c;
        for (std::size_t i : cov)
          if (count[i] == 0 && !std::binary_search(cover[k].begin(), cover[k].end(), i)) s -= map.scores[i], --c;
        for (std::size_t i : cover[k]) ++count[i];
        const double value = mean(s, static_cast<std::size_t>(c));
        if (!(value < best - 1e-12)) continue;
        objects[k] = cand;
        bool keeps = true;
        for (const RelationSpec* r : touching[k]) {
          const auto subj = std::find_if(objects.begin(), objects.end(),
                                         [&](const PlacedObject& o) { return o.id == r->subject; });
          if (subj == objects.end() || !relation_satisfied(space_of(*subj), objects, *r, cfg)) {
            keeps = false;
            break;
          }
        }
        objects[k] = saved;
        if (!keeps) continue;
        best = value;
        best_k = k;
        best_obj = cand;
        best_cover = std::move(cov);
      }
    }
    if (best_k == objects.size()) break;
    for (std::size_t i : cover[best_k]) --count[i];
    for (std::size_t i : best_cover) ++count[i];
    // Re-summed rather than patched so the trace matches a fresh evaluation exactly.
    unc_sum = 0.0;
    unc_cnt = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (count[i] == 0) unc_sum += map.scores[i], ++unc_cnt;
    objects[best_k] = best_obj;
    cover[best_k] = std::move(best_cover);
    current = mean(unc_sum, unc_cnt);
    ++res.accepted;
    res.trace.push_back(current);
  }
  return res;
}

}  // namespace walkfit::placement
