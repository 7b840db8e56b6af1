#pragma once

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <vector>

#include "walkfit/eni/metric.hpp"
#include "walkfit/geometry/delaunay.hpp"

namespace walkfit::eni {

struct ScoreMap {
  std::vector<Point2> virtual_points;
  std::vector<double> scores;
  std::vector<std::size_t> best_physical;  // minimizing physical point per virtual point
  std::vector<char> direction_fallback;    // admissible set fell back to one direction
  std::vector<Point2> physical_points;
  MetricConfig config;

  std::size_t size() const { return scores.size(); }
};

struct SampleTargets {
  int virtual_count = 150;
  int physical_count = 150;
};

// 0 selects the hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Scores every virtual point against every physical point. Work is split over physical
// points; each worker keeps its own running minimum per virtual point and the results are
// merged by (score, physical index), so the map does not depend on the thread count.
inline ScoreMap score_points(const Environment& V, const Environment& P,
                             std::vector<Point2> virtual_points,
                             std::vector<Point2> physical_points, const MetricConfig& cfg,
                             unsigned threads = 0) {
  if (physical_points.empty()) throw ConfigError("physical sample set is empty");
  const RotationPlan plan(cfg);
  const std::size_t nv = virtual_points.size();
  const std::size_t np = physical_points.size();

  std::vector<VirtualSite> sites(nv);
  for (std::size_t i = 0; i < nv; ++i) sites[i] = make_virtual_site(V, virtual_points[i], cfg);

  struct Best {
    double score = std::numeric_limits<double>::infinity();
    std::size_t index = std::numeric_limits<std::size_t>::max();
  };
  const unsigned workers = std::min<unsigned>(resolve_threads(threads),
                                              static_cast<unsigned>(std::max<std::size_t>(np, 1)));
  std::vector<std::vector<Best>> local(workers, std::vector<Best>(nv));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);

  auto work = [&](unsigned w) {
    try {
      std::vector<Best>& best = local[w];
      for (std::size_t j = next++; j < np; j = next++) {
        const PhysicalSite p = make_physical_site(P, physical_points[j], cfg, plan);
        for (std::size_t i = 0; i < nv; ++i) {
          if (best[i].score == 0.0) continue;
          const double s = pair_score(sites[i], p, plan, best[i].score);
          if (s < best[i].score || (s == best[i].score && j < best[i].index)) best[i] = {s, j};
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);

  ScoreMap map;
  map.config = cfg;
  map.scores.resize(nv);
  map.best_physical.resize(nv);
  map.direction_fallback.resize(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Best b;
    for (unsigned w = 0; w < workers; ++w) {
      const Best& c = local[w][i];
      if (c.score < b.score || (c.score == b.score && c.index < b.index)) b = c;
    }
    map.scores[i] = b.score;
    map.best_physical[i] = b.index;
    map.direction_fallback[i] = sites[i].directions.fallback ? 1 : 0;
  }
  map.virtual_points = std::move(virtual_points);
  map.physical_points = std::move(physical_points);
  return map;
}

inline ScoreMap score_map(const Environment& V, const Environment& P, const MetricConfig& cfg,
                          SampleTargets targets = {}, unsigned threads = 0) {
  cfg.validate();
  return score_points(V, P, delaunay_sample(V, targets.virtual_count),
                      delaunay_sample(P, targets.physical_count), cfg, threads);
}

}  // namespace walkfit::eni
