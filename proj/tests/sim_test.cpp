#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "generators.hpp"
#include "walkfit/sim/trial.hpp"

using namespace walkfit;
using namespace walkfit::sim;
using gen::rect;

namespace {

Room room(std::string id, double x0, double y0, double x1, double y1) {
  Room r;
  r.id = std::move(id);
  r.polygon = rect(x0, y0, x1, y1);
  return r;
}

PlacedObject obj(std::string id, std::string room_id, double w, double l, Point2 c) {
  PlacedObject o;
  o.id = std::move(id);
  o.room = std::move(room_id);
  o.asset = {o.id, w, l, 1.0, "", {}};
  o.center = c;
  return o;
}

Environment box_env(double w, double h) { return Environment::make(rect(0, 0, w, h), {}); }

// Three rooms side by side inside a 9 x 3 outline, separated by walls with door gaps.
FloorPlan three_rooms() {
  FloorPlan fp;
  fp.outline = rect(0, 0, 9, 3);
  fp.walls = {rect(2.95, 0, 3.05, 1.0), rect(2.95, 2.0, 3.05, 3), rect(5.95, 0, 6.05, 1.0), rect(5.95, 2.0, 6.05, 3)};
  return fp;
}

Layout three_room_layout() {
  Layout l;
  l.rooms = {room("room_1", 0, 0, 3, 3), room("room_2", 3, 0, 6, 3), room("room_3", 6, 0, 9, 3)};
  l.objects = {obj("room_1:table_a", "room_1", 0.8, 0.8, {1.0, 2.4})};
  return l;
}

// Oracle ray cast: nearest hit against the polygon edges, capped at `range`.
double oracle_ray(const std::vector<SimplePolygon>& polys, Point2 o, double angle, double range) {
  const Point2 d{std::cos(angle), std::sin(angle)};
  double best = range;
  for (const SimplePolygon& p : polys)
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point2 a = p.edge_start(i), b = p.edge_end(i);
      const Point2 e = b - a;
      const double den = d.x * e.y - d.y * e.x;
      if (std::abs(den) < 1e-15) continue;
      const Point2 w = a - o;
      const double t = (w.x * e.y - w.y * e.x) / den;
      const double u = (w.x * d.y - w.y * d.x) / den;
      if (t >= 0 && u >= 0 && u <= 1) best = std::min(best, t);
    }
  return best;
}

}  // namespace

TEST(Step, IdentityGainsCopyVirtualMotion) {
  UserState s;
  s.physical_pos = {1, 2};
  s.virtual_pos = {1, 2};
  s.physical_heading = s.virtual_heading = 0.3;
  const UserState n = step(s, {0.0, 0.05}, Gains{});
  EXPECT_NEAR(distance(n.physical_pos, s.physical_pos), 0.05, 1e-15);
  EXPECT_EQ(n.physical_pos, n.virtual_pos);
}

TEST(Step, RotationGainScalesTurn) {
  UserState s;
  const double turn = 124.0 * kPi / 180.0;
  const UserState n = step(s, {turn, 0.0}, Gains{1.24, 1.0, 0});
  EXPECT_NEAR(n.physical_heading * 180.0 / kPi, 100.0, 1e-9);
  EXPECT_NEAR(n.virtual_heading * 180.0 / kPi, 124.0, 1e-9);
}

TEST(Step, ZeroMotionLeavesPhysicalPoseAlone) {
  UserState s;
  s.physical_pos = {3, 4};
  s.physical_heading = 1.0;
  const UserState n = step(s, {}, Gains{0.67, 1.26, 1});
  EXPECT_EQ(n.physical_pos, s.physical_pos);
  EXPECT_DOUBLE_EQ(n.physical_heading, s.physical_heading);
}

TEST(Step, TranslationGainAndCurvature) {
  UserState s;
  const UserState n = step(s, {0.0, 0.5}, Gains{1.0, 1.25, -1});
  EXPECT_NEAR(n.physical_heading, kTwoPi - 0.5 / 7.5, 1e-12);
  EXPECT_NEAR(norm(n.physical_pos), 0.4, 1e-12);
}

TEST(Arc, AlignedSpacesKeepIdentity) {
  const Environment env = box_env(6, 5);
  UserState s;
  s.physical_pos = s.virtual_pos = {2, 2};
  s.physical_heading = s.virtual_heading = 0.4;
  const Gains g = arc_step(s, {0.0, 0.05}, env.segments(), env.segments());
  EXPECT_TRUE(g.identity());
  const Gains t = arc_step(s, {0.1, 0.0}, env.segments(), env.segments());
  EXPECT_TRUE(t.identity());
}

TEST(Arc, DisabledControllerIsIdentity) {
  const Environment V = box_env(20, 20), P = box_env(3, 3);
  UserState s;
  s.physical_pos = {2.5, 1.5};
  s.virtual_pos = {10, 10};
  s.controller_enabled = false;
  EXPECT_TRUE(arc_step(s, {0.0, 0.05}, V.segments(), P.segments()).identity());
}

// The physical wall ahead is slanted so it recedes on the walker's right; the virtual space is
// open. Brute force over the candidate set with an independent ray cast picks clockwise curvature.
TEST(Arc, SteersAwayFromCloserPhysicalWall) {
  const SimplePolygon phys_poly = SimplePolygon::from({{0, 0}, {3, 0}, {2, 4}, {0, 4}});
  const Environment P = Environment::make(phys_poly, {});
  const Environment V = box_env(20, 20);
  UserState s;
  s.physical_pos = {1, 2};
  s.virtual_pos = {10, 10};
  const VirtualMotion m{0.0, 0.05};
  const GainLimits lim;
  const Probes pr;

  const double pf = oracle_ray({phys_poly}, s.physical_pos, 0.0, pr.range);
  const double vf = oracle_ray({rect(0, 0, 20, 20)}, s.virtual_pos, 0.0, pr.range);
  const double tg = std::clamp(vf / pf, lim.translation_min, lim.translation_max);
  EXPECT_NEAR(tg, 1.26, 1e-12);
  double best = std::numeric_limits<double>::infinity();
  int best_c = 99;
  double best_r = 0;
  for (double r : {1.0, 0.67, 0.78, 0.89, 1.08, 1.16, 1.24})
    for (int c : {0, 1, -1}) {
      const double ph = c * m.advance / lim.min_curvature_radius;
      const Point2 pp = s.physical_pos + Point2{std::cos(ph), std::sin(ph)} * (m.advance / tg);
      const Point2 vp = s.virtual_pos + Point2{m.advance, 0.0};
      double mis = 0;
      for (double a : {0.0, kPi / 2, -kPi / 2})
        mis += std::abs(oracle_ray({phys_poly}, pp, ph + a, pr.range) - oracle_ray({rect(0, 0, 20, 20)}, vp, a, pr.range));
      if (mis < best - 1e-12) best = mis, best_c = c, best_r = r;
    }
  EXPECT_EQ(best_c, -1);
  const Gains g = arc_step(s, m, V.segments(), P.segments(), lim, pr);
  EXPECT_EQ(g.curvature, best_c);
  EXPECT_DOUBLE_EQ(g.rotation, best_r);
  EXPECT_NEAR(g.translation, tg, 1e-12);
}

TEST(Walk, VisitsEveryRoomAndIsDeterministic) {
  const Environment V = floorplan_to_environment(three_rooms());
  const Layout l = three_room_layout();
  const WalkPlan a = generate_walk(V, l, 7);
  const WalkPlan b = generate_walk(V, l, 7);
  EXPECT_EQ(a.waypoints, b.waypoints);
  std::set<std::string> seen(a.visits.begin(), a.visits.end());
  EXPECT_EQ(seen.size(), 3u);
  EXPECT_TRUE(a.warnings.empty());
  // Every leg stays in free space and off the furniture.
  for (std::size_t i = 1; i < a.waypoints.size(); ++i)
    for (int k = 0; k <= 20; ++k) {
      const Point2 p = a.waypoints[i - 1] + (a.waypoints[i] - a.waypoints[i - 1]) * (k / 20.0);
      EXPECT_TRUE(V.in_free_space(p, 0.1));
      EXPECT_FALSE(footprint_box(l.objects[0]).contains_closed(p));
    }
  EXPECT_NE(generate_walk(V, l, 8).waypoints, a.waypoints);
}

TEST(Walk, TourIsCutAtTheRequestedLength) {
  const Environment V = floorplan_to_environment(three_rooms());
  const Layout l = three_room_layout();
  auto length = [](const WalkPlan& p) {
    double s = 0.0;
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) s += distance(p.waypoints[i - 1], p.waypoints[i]);
    return s;
  };
  for (double target : {25.0, 60.0, 150.0}) {
    WalkOptions opt;
    opt.min_length = target;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) EXPECT_NEAR(length(generate_walk(V, l, seed, opt)), target, 1e-9);
  }
  // With no length asked for, the first round is kept whole.
  WalkOptions opt;
  opt.min_length = 0.0;
  const WalkPlan p = generate_walk(V, l, 2, opt);
  EXPECT_EQ(p.visits.size(), 6u);
  EXPECT_GT(length(p), 0.0);
}

TEST(Walk, FullyFurnishedRoomIsSkipped) {
  const Environment V = floorplan_to_environment(three_rooms());
  Layout l = three_room_layout();
  l.objects.push_back(obj("room_3:bed_a", "room_3", 2.9, 2.9, {7.5, 1.5}));
  const WalkPlan p = generate_walk(V, l, 1);
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("room_3"), std::string::npos);
  EXPECT_EQ(std::count(p.visits.begin(), p.visits.end(), "room_3"), 0);
}

TEST(Trial, IdentityGainsReproduceTrajectory) {
  const Environment V = floorplan_to_environment(three_rooms());
  const Layout l = three_room_layout();
  TrialOptions opt;
  opt.trajectory_stride = 1;
  const WalkPlan plan = generate_walk(V, l, 3);
  const CollisionReport r = run_walk(V, l.objects, l.rooms, V, plan, false, opt);
  ASSERT_GT(r.steps, 100);
  for (const PoseSample& p : r.trajectory) {
    EXPECT_NEAR(distance(p.physical_pos, p.virtual_pos), 0.0, 1e-9);
    EXPECT_NEAR(p.physical_heading, p.virtual_heading, 1e-9);
  }
  EXPECT_EQ(r.collisions, 0);
}

TEST(Trial, NoRedirectionInLargerVirtualSpaceCollides) {
  const Environment V = box_env(8, 7.2), P = box_env(4, 3.6);
  const std::vector<Room> rooms{room("room_1", 0, 0, 8, 7.2)};
  WalkPlan plan;
  plan.waypoints = {{4, 3.6}, {7.5, 6.8}, {0.5, 0.5}};
  const CollisionReport r = run_walk(V, {}, rooms, P, plan, false);
  EXPECT_GT(r.collisions, 0);
  EXPECT_EQ(r.unreachable_rooms, std::set<std::string>{"room_1"});
  EXPECT_GT(r.out_of_bounds_fraction, 0.0);
  EXPECT_LE(r.out_of_bounds_fraction, 1.0);
}

TEST(Trial, PhysicalSupersetHasNoCollisions) {
  SceneBundle s;
  s.name = "superset";
  s.physical = box_env(5, 5);
  s.virtual_plan.outline = rect(0, 0, 4, 3.6);
  Layout l;
  l.rooms = {room("room_1", 0, 0, 4, 3.6)};
  l.objects = {obj("room_1:sofa_a", "room_1", 1.6, 0.8, {2.0, 3.1}), obj("room_1:desk_a", "room_1", 1.0, 0.6, {0.6, 0.4})};
  s.layout = l;
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_EQ(run_trial(s, Condition::enipp_arc, seed).collisions, 0);
  EXPECT_THROW(run_trial(s, Condition::llm_arc, 0), ConfigError);
}

TEST(Trial, SameSeedSameReport) {
  SceneBundle s;
  s.name = "wide";
  s.physical = box_env(4, 3.6);
  s.virtual_plan = three_rooms();
  s.layout = three_room_layout();
  s.baseline_layout = three_room_layout();
  for (Condition c : {Condition::llm_arc, Condition::enipp_norwd, Condition::enipp_arc}) {
    const CollisionReport a = run_trial(s, c, 11), b = run_trial(s, c, 11);
    EXPECT_EQ(to_json(a, true), to_json(b, true));
  }
}

TEST(Trial, GainsStayWithinLimits) {
  SceneBundle s;
  s.name = "wide";
  s.physical = box_env(4, 3.6);
  s.virtual_plan = three_rooms();
  s.layout = three_room_layout();
  const GainLimits lim;
  int steps = 0, redirected = 0;
  TrialOptions opt;
  opt.on_step = [&](const UserState& st, const Gains& g) {
    ++steps;
    EXPECT_GE(g.rotation, lim.rotation_min);
    EXPECT_LE(g.rotation, lim.rotation_max);
    EXPECT_GE(g.translation, lim.translation_min);
    EXPECT_LE(g.translation, lim.translation_max);
    EXPECT_TRUE(g.curvature >= -1 && g.curvature <= 1);
    if (!st.controller_enabled) EXPECT_TRUE(g.identity());
    if (!g.identity()) ++redirected;
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) run_trial(s, Condition::enipp_arc, seed, opt);
  EXPECT_GT(steps, 0);
  EXPECT_GT(redirected, 0);
}

// Boundary events come in exit/re-entry pairs; a walk starting or ending outside leaves one open.
TEST(Trial, CollisionParity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0.3, 11.7), uy(0.3, 9.7);
  const Environment V = box_env(12, 10);
  const Environment P = Environment::make(rect(0, 0, 5, 4), {rect(2, 1.5, 2.6, 2.1)});
  const std::vector<Room> rooms{room("room_1", 0, 0, 12, 10)};
  for (int trial = 0; trial < 50; ++trial) {
    WalkPlan plan;
    for (int k = 0; k < 5; ++k) plan.waypoints.push_back({ux(rng), uy(rng)});
    for (bool arc : {false, true}) {
      const CollisionReport r = run_walk(V, {}, rooms, P, plan, arc);
      EXPECT_EQ(r.boundary_events, 2 * r.excursions - (r.ended_outside ? 1 : 0) + (r.started_outside ? 1 : 0));
      EXPECT_EQ(r.collisions, r.boundary_events + r.obstacle_events);
      EXPECT_GE(r.out_of_bounds_fraction, 0.0);
      EXPECT_LE(r.out_of_bounds_fraction, 1.0);
    }
  }
}

TEST(Trial, ObstaclePairCountingIsOptional) {
  const Environment V = box_env(6, 2);
  const Environment P = Environment::make(rect(0, 0, 6, 2), {rect(2.9, 0.5, 3.1, 1.5)});
  const std::vector<Room> rooms{room("room_1", 0, 0, 6, 2)};
  WalkPlan plan;
  plan.waypoints = {{0.5, 1}, {5.5, 1}};
  TrialOptions opt;
  EXPECT_EQ(run_walk(V, {}, rooms, P, plan, false, opt).collisions, 1);
  opt.pair_count_obstacles = true;
  EXPECT_EQ(run_walk(V, {}, rooms, P, plan, false, opt).collisions, 2);
}

TEST(Stats, MedianAndMean) {
  const Stats a = summarize({0, 0, 2});
  EXPECT_DOUBLE_EQ(a.median, 0.0);
  EXPECT_NEAR(a.mean, 0.667, 1e-3);
  const Stats b = summarize({4});
  EXPECT_DOUBLE_EQ(b.median, 4.0);
  EXPECT_DOUBLE_EQ(b.mean, 4.0);
  EXPECT_DOUBLE_EQ(summarize({1, 2, 3, 10}).median, 2.5);
  EXPECT_THROW(summarize({}), ConfigError);
}

TEST(Experiment, RowsStatsAndErrors) {
  SceneBundle s;
  s.name = "wide";
  s.physical = box_env(4, 3.6);
  s.virtual_plan = three_rooms();
  s.layout = three_room_layout();
  s.baseline_layout = three_room_layout();
  const std::vector<Condition> all{Condition::llm_arc, Condition::enipp_norwd, Condition::enipp_arc};
  const ExperimentResult r = run_experiment({s}, all, 4, 100, {}, 3);
  ASSERT_EQ(r.records.size(), 12u);
  ASSERT_EQ(r.stats.size(), 3u);
  EXPECT_EQ(r.records[5].condition, Condition::enipp_norwd);
  EXPECT_EQ(r.records[5].seed, 101u);
  std::vector<double> counts;
  for (int i = 8; i < 12; ++i) counts.push_back(r.records[i].report.collisions);
  EXPECT_DOUBLE_EQ(r.stats[2].collisions.mean, summarize(counts).mean);
  // Thread count does not change the result.
  EXPECT_EQ(to_json(run_experiment({s}, all, 4, 100, {}, 1)), to_json(r));
  std::ostringstream csv;
  write_trials_csv(csv, r);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "scene,condition,seed,collisions,unreachable_count,oob_fraction");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 13);

  EXPECT_THROW(run_experiment({}, all, 4), ConfigError);
  EXPECT_THROW(run_experiment({s}, all, 0), ConfigError);
  s.baseline_layout.reset();
  EXPECT_THROW(run_experiment({s}, all, 2), ConfigError);
  EXPECT_EQ(condition_from_string("enipp_norwd"), Condition::enipp_norwd);
  EXPECT_THROW(condition_from_string("arc"), ConfigError);
}
