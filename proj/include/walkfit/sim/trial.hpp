#pragma once

// Simulated walks under the three study conditions, with collision and reachability accounting.

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkfit/eni/export.hpp"
#include "walkfit/eni/score_map.hpp"
#include "walkfit/scene/io.hpp"
#include "walkfit/sim/controller.hpp"
#include "walkfit/sim/walk.hpp"

namespace walkfit::sim {

enum class Condition { llm_arc, enipp_norwd, enipp_arc };

inline std::string to_string(Condition c) {
  switch (c) {
    case Condition::llm_arc: return "llm_arc";
    case Condition::enipp_norwd: return "enipp_norwd";
    case Condition::enipp_arc: return "enipp_arc";
  }
  return "llm_arc";
}

inline Condition condition_from_string(const std::string& s) {
  for (Condition c : {Condition::llm_arc, Condition::enipp_norwd, Condition::enipp_arc})
    if (to_string(c) == s) return c;
  throw ConfigError("unknown condition '" + s + "' (expected llm_arc, enipp_norwd or enipp_arc)");
}

inline bool uses_arc(Condition c) { return c != Condition::enipp_norwd; }

struct PoseSample {
  double t = 0.0;
  Point2 physical_pos;
  double physical_heading = 0.0;
  Point2 virtual_pos;
  double virtual_heading = 0.0;
};

struct CollisionReport {
  int collisions = 0;
  int boundary_events = 0;  // exits plus re-entries of the physical boundary
  int obstacle_events = 0;
  int excursions = 0;       // times the walker left the physical boundary
  bool started_outside = false;
  bool ended_outside = false;
  std::set<std::string> unreachable_rooms;
  double out_of_bounds_fraction = 0.0;
  int steps = 0;
  std::vector<PoseSample> trajectory;
  std::vector<std::string> warnings;
};

struct TrialOptions {
  WalkOptions walk;
  GainLimits limits;
  Probes probes;
  double turn_rate = kPi / 2;         // rad/s when turning in place
  bool pair_count_obstacles = false;  // also count leaving an interior obstacle
  int trajectory_stride = 20;         // keep every n-th pose
  std::function<void(const UserState&, const Gains&)> on_step;

  void validate() const {
    walk.validate();
    limits.validate();
    if (!(turn_rate > 0.0) || trajectory_stride < 1) throw ConfigError("trial options must be positive");
  }
};

// Runs one walk. The physical frame is the virtual frame shifted so both bounding boxes share
// their center; when the start maps outside the physical free space the walker starts at the
// physical center instead. Without `arc` every step uses identity gains.
inline CollisionReport run_walk(const Environment& V, const std::vector<PlacedObject>& objects,
                                const std::vector<Room>& rooms, const Environment& P, const WalkPlan& plan,
                                bool arc, const TrialOptions& opt = {}) {
  opt.validate();
  CollisionReport rep;
  rep.warnings = plan.warnings;
  if (plan.waypoints.empty()) return rep;
  const auto [vlo, vhi] = V.boundary().bounds();
  const auto [plo, phi] = P.boundary().bounds();
  const Point2 offset = (plo + phi) * 0.5 - (vlo + vhi) * 0.5;
  const std::vector<Segment> virt = probe_segments(V, objects);
  const std::vector<Segment>& phys = P.segments();

  UserState s;
  s.virtual_pos = plan.waypoints[0];
  if (plan.waypoints.size() > 1) s.virtual_heading = polar_angle(plan.waypoints[1] - plan.waypoints[0]);
  s.physical_pos = s.virtual_pos + offset;
  if (!P.in_free_space(s.physical_pos, opt.walk.body_margin)) s.physical_pos = (plo + phi) * 0.5;
  s.physical_heading = s.virtual_heading;

  bool outside = !P.inside_boundary(s.physical_pos);
  bool in_obstacle = !outside && P.inside_obstacle(s.physical_pos);
  s.controller_enabled = !outside && !in_obstacle;
  rep.started_outside = outside;
  int out_steps = 0;
  auto room_at = [&](Point2 p) -> const Room* {
    for (const Room& r : rooms)
      if (r.polygon.contains(p)) return &r;
    return nullptr;
  };
  auto record = [&] {
    if ((rep.steps - 1) % opt.trajectory_stride == 0)
      rep.trajectory.push_back({rep.steps * plan.dt, s.physical_pos, s.physical_heading, s.virtual_pos, s.virtual_heading});
  };
  rep.trajectory.push_back({0.0, s.physical_pos, s.physical_heading, s.virtual_pos, s.virtual_heading});

  const double max_turn = opt.turn_rate * plan.dt;
  const double max_advance = plan.speed * plan.dt;
  for (std::size_t k = 1; k < plan.waypoints.size(); ++k) {
    const Point2 target = plan.waypoints[k];
    for (;;) {
      const Point2 to = target - s.virtual_pos;
      const double remaining = norm(to);
      if (remaining < 1e-9) break;
      VirtualMotion m;
      double err = polar_angle(to) - s.virtual_heading;
      err = std::remainder(err, kTwoPi);
      if (std::abs(err) > 1e-9)
        m.turn = std::clamp(err, -max_turn, max_turn);
      else
        m.advance = std::min(max_advance, remaining);
      const Gains g = arc ? arc_step(s, m, virt, phys, opt.limits, opt.probes) : Gains{};
      if (opt.on_step) opt.on_step(s, g);
      s = step(s, m, g, opt.limits);
      ++rep.steps;

      const bool now_out = !P.inside_boundary(s.physical_pos);
      const bool now_obs = !now_out && P.inside_obstacle(s.physical_pos);
      if (now_out != outside) {
        ++rep.boundary_events;
        if (now_out) ++rep.excursions;
      }
      if (now_obs && !in_obstacle) ++rep.obstacle_events;
      if (!now_obs && in_obstacle && opt.pair_count_obstacles) ++rep.obstacle_events;
      outside = now_out;
      in_obstacle = now_obs;
      s.controller_enabled = !outside && !in_obstacle;
      if (outside) {
        ++out_steps;
        if (const Room* r = room_at(s.virtual_pos)) rep.unreachable_rooms.insert(r->id);
      }
      record();
    }
  }
  rep.collisions = rep.boundary_events + rep.obstacle_events;
  rep.ended_outside = outside;
  rep.out_of_bounds_fraction = rep.steps == 0 ? 0.0 : static_cast<double>(out_steps) / rep.steps;
  return rep;
}

inline const Layout& layout_for(const SceneBundle& scene, Condition c) {
  const std::optional<Layout>& l = c == Condition::llm_arc ? scene.baseline_layout : scene.layout;
  if (!l) throw ConfigError("scene '" + scene.name + "' has no " +
                            (c == Condition::llm_arc ? "baseline layout" : "refined layout") + " for condition " +
                            to_string(c));
  return *l;
}

inline CollisionReport run_trial(const SceneBundle& scene, Condition c, std::uint64_t seed,
                                 const TrialOptions& opt = {}) {
  const Layout& layout = layout_for(scene, c);
  const Environment V = floorplan_to_environment(scene.virtual_plan);
  const WalkPlan plan = generate_walk(V, layout, seed, opt.walk);
  return run_walk(V, layout.objects, layout.rooms, scene.physical, plan, uses_arc(c), opt);
}

struct Stats {
  double median = 0.0;
  double mean = 0.0;
};

inline Stats summarize(std::vector<double> v) {
  if (v.empty()) throw ConfigError("no trials to summarize");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  Stats s;
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(n);
  return s;
}

struct TrialRecord {
  std::string scene;
  Condition condition = Condition::llm_arc;
  std::uint64_t seed = 0;
  CollisionReport report;
};

struct ConditionStats {
  std::string scene;
  Condition condition = Condition::llm_arc;
  int trials = 0;
  Stats collisions;
  Stats unreachable;
  Stats oob_fraction;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // scene, then condition, then seed order
  std::vector<ConditionStats> stats;
};

// Trials for every scene and condition with seeds seed_base .. seed_base + trials - 1. Trials run
// on worker threads but land in fixed slots, so the result does not depend on scheduling.
inline ExperimentResult run_experiment(const std::vector<SceneBundle>& scenes, const std::vector<Condition>& conditions,
                                       int trials, std::uint64_t seed_base = 0, const TrialOptions& opt = {},
                                       unsigned threads = 0) {
  if (scenes.empty() || conditions.empty() || trials < 1)
    throw ConfigError("experiment needs at least one scene, condition and trial");
  for (const SceneBundle& s : scenes)
    for (Condition c : conditions) layout_for(s, c);
  ExperimentResult res;
  for (const SceneBundle& s : scenes)
    for (Condition c : conditions)
      for (int t = 0; t < trials; ++t) res.records.push_back({s.name, c, seed_base + static_cast<std::uint64_t>(t), {}});

  std::vector<const SceneBundle*> scene_of;
  for (const SceneBundle& s : scenes)
    for (std::size_t i = 0; i < conditions.size() * static_cast<std::size_t>(trials); ++i) scene_of.push_back(&s);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(res.records.size());
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < res.records.size();) {
      try {
        TrialRecord& r = res.records[i];
        TrialOptions o = opt;
        o.on_step = nullptr;
        r.report = run_trial(*scene_of[i], r.condition, r.seed, o);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(eni::resolve_threads(threads), static_cast<unsigned>(res.records.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t b = 0; b < res.records.size(); b += static_cast<std::size_t>(trials)) {
    std::vector<double> col, unr, oob;
    for (std::size_t i = b; i < b + static_cast<std::size_t>(trials); ++i) {
      col.push_back(res.records[i].report.collisions);
      unr.push_back(static_cast<double>(res.records[i].report.unreachable_rooms.size()));
      oob.push_back(res.records[i].report.out_of_bounds_fraction);
    }
    res.stats.push_back({res.records[b].scene, res.records[b].condition, trials, summarize(col), summarize(unr),
                         summarize(oob)});
  }
  return res;
}

inline void write_trials_csv(std::ostream& out, const ExperimentResult& r) {
  out << "scene,condition,seed,collisions,unreachable_count,oob_fraction\n";
  for (const TrialRecord& t : r.records)
    out << t.scene << ',' << to_string(t.condition) << ',' << t.seed << ',' << t.report.collisions << ','
        << t.report.unreachable_rooms.size() << ',' << eni::fmt_fixed(t.report.out_of_bounds_fraction) << '\n';
}

inline void write_stats_csv(std::ostream& out, const ExperimentResult& r) {
  out << "scene,condition,trials,collisions_median,collisions_mean,unreachable_median,unreachable_mean,"
         "oob_fraction_mean\n";
  for (const ConditionStats& s : r.stats)
    out << s.scene << ',' << to_string(s.condition) << ',' << s.trials << ',' << eni::fmt_fixed(s.collisions.median)
        << ',' << eni::fmt_fixed(s.collisions.mean) << ',' << eni::fmt_fixed(s.unreachable.median) << ','
        << eni::fmt_fixed(s.unreachable.mean) << ',' << eni::fmt_fixed(s.oob_fraction.mean) << '\n';
}

inline nlohmann::json to_json(const CollisionReport& r, bool with_trajectory = false) {
  nlohmann::json j{{"collisions", r.collisions},
                   {"boundary_events", r.boundary_events},
                   {"obstacle_events", r.obstacle_events},
                   {"excursions", r.excursions},
                   {"started_outside", r.started_outside},
                   {"ended_outside", r.ended_outside},
                   {"unreachable_rooms", r.unreachable_rooms},
                   {"out_of_bounds_fraction", r.out_of_bounds_fraction},
                   {"steps", r.steps},
                   {"warnings", r.warnings}};
  if (with_trajectory) {
    nlohmann::json tr = nlohmann::json::array();
    for (const PoseSample& p : r.trajectory)
      tr.push_back({{"t", p.t},
                    {"physical", {p.physical_pos.x, p.physical_pos.y, p.physical_heading}},
                    {"virtual", {p.virtual_pos.x, p.virtual_pos.y, p.virtual_heading}}});
    j["trajectory"] = tr;
  }
  return j;
}

inline nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json trials = nlohmann::json::array(), stats = nlohmann::json::array();
  for (const TrialRecord& t : r.records) {
    nlohmann::json j = to_json(t.report);
    j["scene"] = t.scene;
    j["condition"] = to_string(t.condition);
    j["seed"] = t.seed;
    trials.push_back(j);
  }
  for (const ConditionStats& s : r.stats)
    stats.push_back({{"scene", s.scene},
                     {"condition", to_string(s.condition)},
                     {"trials", s.trials},
                     {"collisions", {{"median", s.collisions.median}, {"mean", s.collisions.mean}}},
                     {"unreachable", {{"median", s.unreachable.median}, {"mean", s.unreachable.mean}}},
                     {"oob_fraction", {{"median", s.oob_fraction.median}, {"mean", s.oob_fraction.mean}}}});
  return {{"trials", trials}, {"stats", stats}};
}

}  // namespace walkfit::sim
