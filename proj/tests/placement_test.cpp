#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "walkfit/placement/refine.hpp"

using namespace walkfit;
using namespace walkfit::placement;
using gen::rect;

namespace {

RoomSpace space(double w, double h) {
  Room r;
  r.id = "room_1";
  r.polygon = rect(0, 0, w, h);
  return RoomSpace::make(r);
}

PlacedObject obj(std::string id, double w, double l, Point2 c = {}, int yaw = 0) {
  PlacedObject o;
  o.id = std::move(id);
  o.room = "room_1";
  o.asset = {o.id, w, l, 1.0, "", {}};
  o.center = c;
  o.yaw = yaw;
  return o;
}

int wall(const RoomSpace& s, const std::string& name) { return *wall_index(s.room.polygon, name); }

Layout as_layout(const RoomSpace& s, const std::vector<PlacedObject>& objects) {
  Layout l;
  l.rooms.push_back(s.room);
  l.objects = objects;
  return l;
}

// Independent objective: mean score of samples outside every footprint.
double brute_objective(const std::vector<PlacedObject>& objects, const eni::ScoreMap& map) {
  double sum = 0;
  int count = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Point2 p = map.virtual_points[i];
    bool covered = false;
    for (const PlacedObject& o : objects) {
      const double hx = 0.5 * o.extent_x(), hy = 0.5 * o.extent_y();
      covered = covered || (std::abs(p.x - o.center.x) <= hx + 1e-12 && std::abs(p.y - o.center.y) <= hy + 1e-12);
    }
    if (!covered) sum += map.scores[i], ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

eni::ScoreMap grid_map(double w, double h, double step, double value = 0.0) {
  eni::ScoreMap m;
  for (double y = step / 2; y < h; y += step)
    for (double x = step / 2; x < w; x += step) {
      m.virtual_points.push_back({x, y});
      m.scores.push_back(value);
    }
  return m;
}

}  // namespace

TEST(InitialPlace, NearWallAndFrontOf) {
  const RoomSpace s = space(4, 3.6);
  std::vector<RelationSpec> rs{{"sofa", RoomAnchor{RoomAnchorKind::near_wall, wall(s, "upper"), -1}},
                               {"table", ObjectAnchor{ObjectAnchorKind::front, "sofa"}}};
  const auto placed = initial_place(s, {obj("table", 1.1, 0.6), obj("sofa", 2.0, 0.9)}, rs);
  const PlacedObject& sofa = placed[1];
  EXPECT_EQ(sofa.yaw, 180);
  EXPECT_NEAR(sofa.center.x, 2.0, 1e-12);
  EXPECT_NEAR(sofa.center.y, 3.6 - 0.1 - 0.45, 1e-12);
  const PlacedObject& table = placed[0];
  EXPECT_NEAR(table.center.x, 2.0, 1e-12);
  // Facing side of the sofa is -y; 0.1 m gap between footprints.
  EXPECT_NEAR(footprint_box(sofa).lo.y - footprint_box(table).hi.y, 0.1, 1e-12);
  EXPECT_TRUE(relation_satisfied(s, placed, rs[0]));
  EXPECT_TRUE(relation_satisfied(s, placed, rs[1]));
}

TEST(InitialPlace, MiddleTieBreakAndCorners) {
  const RoomSpace s = space(6, 4);
  std::vector<RelationSpec> rs{{"a", RoomAnchor{RoomAnchorKind::middle, -1, -1}},
                               {"b", RoomAnchor{RoomAnchorKind::middle, -1, -1}},
                               {"c", RoomAnchor{RoomAnchorKind::corner, wall(s, "lower"), wall(s, "left")}}};
  const auto placed = initial_place(s, {obj("a", 1, 0.5), obj("b", 0.6, 0.6), obj("c", 0.4, 0.4)}, rs);
  EXPECT_NEAR(placed[0].center.x, 3.0, 1e-12);
  EXPECT_NEAR(placed[1].center.x, 3.0 + 0.5 + 0.1 + 0.3, 1e-12);
  EXPECT_NEAR(placed[1].center.y, placed[0].center.y, 1e-12);
  EXPECT_NEAR(footprint_box(placed[2]).lo.x, 0.1, 1e-12);
  EXPECT_NEAR(footprint_box(placed[2]).lo.y, 0.1, 1e-12);
  for (const auto& r : rs) EXPECT_TRUE(relation_satisfied(s, placed, r));
}

TEST(InitialPlace, CycleIsAnError) {
  const RoomSpace s = space(4, 4);
  std::vector<RelationSpec> rs{{"a", ObjectAnchor{ObjectAnchorKind::left, "b"}},
                               {"b", ObjectAnchor{ObjectAnchorKind::left, "a"}}};
  try {
    initial_place(s, {obj("a", 1, 1), obj("b", 1, 1)}, rs);
    FAIL();
  } catch (const InvalidQuery& e) {
    EXPECT_NE(std::string(e.what()).find("a -> b"), std::string::npos);
  }
}

TEST(RelationSatisfied, Thresholds) {
  const RoomSpace s = space(4, 4);
  const std::vector<PlacedObject> objs{obj("near", 1, 1, {0.7, 2}), obj("corner", 0.4, 0.4, {0.6, 0.6}),
                                       obj("t", 1, 1, {2, 2}), obj("l", 0.5, 0.5, {3, 2})};
  EXPECT_TRUE(relation_satisfied(s, objs, {"near", RoomAnchor{RoomAnchorKind::near_wall, wall(s, "left"), -1}}));
  EXPECT_FALSE(relation_satisfied(s, objs, {"near", RoomAnchor{RoomAnchorKind::near_wall, wall(s, "right"), -1}}));
  EXPECT_TRUE(relation_satisfied(
      s, objs, {"corner", RoomAnchor{RoomAnchorKind::corner, wall(s, "lower"), wall(s, "left")}}));
  EXPECT_FALSE(relation_satisfied(s, objs, {"l", ObjectAnchor{ObjectAnchorKind::left, "t"}}));
  EXPECT_TRUE(relation_satisfied(s, objs, {"l", ObjectAnchor{ObjectAnchorKind::right, "t"}}));
  EXPECT_TRUE(relation_satisfied(s, objs, {"t", RoomAnchor{RoomAnchorKind::middle, -1, -1}}));
  EXPECT_FALSE(relation_satisfied(s, objs, {"near", RoomAnchor{RoomAnchorKind::middle, -1, -1}}));
  EXPECT_TRUE(relation_satisfied(s, objs, {"l", RoomAnchor{RoomAnchorKind::far_wall, wall(s, "left"), -1}}));
  EXPECT_FALSE(relation_satisfied(s, objs, {"near", RoomAnchor{RoomAnchorKind::far_wall, wall(s, "left"), -1}}));
}

TEST(RepairOob, Examples) {
  const RoomSpace s = space(4, 4);
  std::vector<PlacedObject> objs{obj("a", 1, 1, {3.8, 2}), obj("b", 1, 1, {2, 2})};
  EXPECT_TRUE(repair_oob(s, objs).empty());
  EXPECT_NEAR(objs[0].center.x, 3.5, 1e-12);
  EXPECT_NEAR(objs[0].center.y, 2.0, 1e-12);
  EXPECT_NEAR(objs[1].center.x, 2.0, 1e-12);

  std::vector<PlacedObject> big{obj("huge", 5, 1, {2, 2})};
  const auto rej = repair_oob(s, big);
  ASSERT_EQ(rej.size(), 1u);
  EXPECT_EQ(rej[0].object_id, "huge");
  EXPECT_TRUE(big.empty());

  // Slightly too long objects shrink on that axis only.
  std::vector<PlacedObject> longish{obj("bed", 1, 4.4, {2, 2})};
  EXPECT_TRUE(repair_oob(s, longish).empty());
  EXPECT_NEAR(longish[0].extent_y(), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(longish[0].scale_x, 1.0);
}

TEST(RepairOob, ConcaveRoom) {
  Room r;
  r.id = "room_1";
  r.polygon = SimplePolygon::from({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {0, 4}});
  const RoomSpace s = RoomSpace::make(r);
  std::vector<PlacedObject> objs{obj("a", 1, 1, {3, 3})};
  EXPECT_TRUE(repair_oob(s, objs).empty());
  EXPECT_TRUE(s.inside(footprint_box(objs[0])));
}

TEST(RepairOverlaps, SlidesSmallerOneAxis) {
  const RoomSpace s = space(6, 6);
  std::vector<PlacedObject> objs{obj("big", 1.2, 1.2, {3, 3}), obj("small", 1, 1, {3, 3.5})};
  EXPECT_TRUE(repair_overlaps(s, objs).empty());
  ASSERT_EQ(objs.size(), 2u);
  EXPECT_EQ(objs[0].center, (Point2{3, 3}));
  EXPECT_NEAR(objs[1].center.x, 3.0, 1e-12);
  EXPECT_NEAR(objs[1].center.y, 4.1, 1e-9);
  EXPECT_TRUE(validate(as_layout(s, objs)).empty());
}

TEST(RepairOverlaps, ShrinksLargerInPackedRoom) {
  const RoomSpace s = space(2, 1);
  std::vector<PlacedObject> objs{obj("big", 1.5, 1, {0.75, 0.5}), obj("small", 0.8, 1, {1.2, 0.5})};
  EXPECT_TRUE(repair_overlaps(s, objs).empty());
  ASSERT_EQ(objs.size(), 2u);
  EXPECT_GE(objs[0].scale_x, 0.8 - 1e-12);
  EXPECT_LT(objs[0].scale_x, 1.0);
  EXPECT_DOUBLE_EQ(objs[0].scale_y, 1.0);
  EXPECT_DOUBLE_EQ(objs[1].scale_x, 1.0);
  EXPECT_TRUE(validate(as_layout(s, objs)).empty());

  std::vector<PlacedObject> hopeless{obj("big", 1.8, 1, {0.9, 0.5}), obj("small", 0.8, 1, {1.2, 0.5})};
  const auto rej = repair_overlaps(s, hopeless);
  ASSERT_EQ(rej.size(), 1u);
  EXPECT_EQ(rej[0].object_id, "small");
  EXPECT_TRUE(validate(as_layout(s, hopeless)).empty());
}

TEST(RepairOverlaps, FixedObstaclesNeverMove) {
  Room r;
  r.id = "room_1";
  r.polygon = rect(0, 0, 5, 5);
  const Environment env = Environment::make(rect(0, 0, 5, 5), {rect(2, 2, 3, 3)});
  const RoomSpace s = RoomSpace::make(r, &env);
  ASSERT_EQ(s.obstacles.size(), 1u);
  std::vector<PlacedObject> objs{obj("a", 1, 1, {2.5, 2.5})};
  EXPECT_TRUE(repair_overlaps(s, objs).empty());
  Layout l = as_layout(s, objs);
  EXPECT_TRUE(validate(l, &env).empty());
}

TEST(Repair, RandomLayoutsComeOutValidAndStayPutProperty) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_real_distribution<double> dim(2.0, 7.0), side(0.3, 2.2);
    const double w = dim(rng), h = dim(rng);
    const RoomSpace s = space(w, h);
    std::uniform_real_distribution<double> px(-0.5, w + 0.5), py(-0.5, h + 0.5);
    std::vector<PlacedObject> objs;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 7); k < n; ++k)
      objs.push_back(obj("o" + std::to_string(k), side(rng), side(rng), {px(rng), py(rng)}, 90 * static_cast<int>(rng() % 4)));
    repair_oob(s, objs);
    repair_overlaps(s, objs);
    const auto issues = validate(as_layout(s, objs));
    for (const auto& i : issues) ADD_FAILURE() << "trial " << trial << ": " << i;
    // Idempotent once valid.
    const auto before = objs;
    EXPECT_TRUE(repair_oob(s, objs).empty());
    EXPECT_TRUE(repair_overlaps(s, objs).empty());
    ASSERT_EQ(objs.size(), before.size());
    for (std::size_t i = 0; i < objs.size(); ++i) {
      EXPECT_EQ(objs[i].center, before[i].center);
      EXPECT_EQ(objs[i].scale_x, before[i].scale_x);
      EXPECT_EQ(objs[i].scale_y, before[i].scale_y);
    }
  }
}

TEST(Coverage, ClosedFootprints) {
  eni::ScoreMap m;
  m.virtual_points = {{1, 1}, {2, 1}, {3, 3}};
  m.scores = {1, 2, 3};
  EXPECT_EQ(coverage({}, m).uncovered.size(), 3u);
  const auto c = coverage({obj("a", 2, 2, {1, 1})}, m);  // box [0,2]x[0,2]; (2,1) on the edge
  EXPECT_EQ(c.per_object[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.uncovered, std::vector<std::size_t>{2});
  const auto all = coverage({obj("a", 10, 10, {2, 2})}, m);
  EXPECT_TRUE(all.uncovered.empty());
}

TEST(Refine, ZeroMapLeavesLayoutAlone) {
  const RoomSpace s = space(5, 5);
  std::vector<PlacedObject> objs{obj("a", 1, 1, {2, 2})};
  const auto res = eni_refine(objs, {s}, {}, grid_map(5, 5, 0.5));
  EXPECT_EQ(res.accepted, 0);
  EXPECT_EQ(objs[0].center, (Point2{2, 2}));
}

TEST(Refine, CoversAdjacentHotPoint) {
  const RoomSpace s = space(5, 5);
  eni::ScoreMap m = grid_map(5, 5, 0.5);
  // Hot sample just right of the object's edge; one 0.25 m step covers it.
  m.virtual_points.push_back({2.7, 2.0});
  m.scores.push_back(4.0);
  std::vector<PlacedObject> objs{obj("a", 1, 1, {2, 2})};
  const double before = brute_objective(objs, m);
  int uncovered = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (std::abs(m.virtual_points[i].x - 2) > 0.5 || std::abs(m.virtual_points[i].y - 2) > 0.5) ++uncovered;
  EXPECT_NEAR(before, 4.0 / uncovered, 1e-12);
  PlacementConfig cfg;
  cfg.refine_iters = 1;
  const auto res = eni_refine(objs, {s}, {}, m, cfg);
  EXPECT_EQ(res.accepted, 1);
  EXPECT_TRUE(footprint_box(objs[0]).contains_closed({2.7, 2.0}));
  EXPECT_NEAR(brute_objective(objs, m), 0.0, 1e-12);
  EXPECT_NEAR(res.trace.front() - res.trace.back(), 4.0 / uncovered, 1e-12);
}

TEST(Refine, MonotoneAndValidProperty) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_real_distribution<double> dim(3.0, 6.0), side(0.4, 1.5), score(0.0, 5.0);
    const double w = dim(rng), h = dim(rng);
    const RoomSpace s = space(w, h);
    eni::ScoreMap m;
    std::uniform_real_distribution<double> px(0, w), py(0, h);
    for (int i = 0; i < 60; ++i) {
      m.virtual_points.push_back({px(rng), py(rng)});
      m.scores.push_back(rng() % 3 == 0 ? 0.0 : score(rng));
    }
    std::vector<PlacedObject> objs;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 5); k < n; ++k)
      objs.push_back(obj("o" + std::to_string(k), side(rng), side(rng), {px(rng), py(rng)}));
    repair_oob(s, objs);
    repair_overlaps(s, objs);
    std::vector<RelationSpec> rs;
    if (objs.size() >= 2) {
      RelationSpec r{objs[1].id, ObjectAnchor{objs[1].center.x < objs[0].center.x ? ObjectAnchorKind::left
                                                                                    : ObjectAnchorKind::right,
                                             objs[0].id}};
      if (relation_satisfied(s, objs, r)) rs.push_back(r);
    }
    const double before = brute_objective(objs, m);
    PlacementConfig cfg;
    cfg.refine_iters = 30;
    cfg.rng_seed = static_cast<unsigned>(trial);
    const auto res = eni_refine(objs, {s}, rs, m, cfg);
    EXPECT_LE(res.iterations, 30);
    EXPECT_NEAR(res.trace.front(), before, 1e-9);
    for (std::size_t i = 1; i < res.trace.size(); ++i) EXPECT_LT(res.trace[i], res.trace[i - 1]);
    EXPECT_NEAR(res.trace.back(), brute_objective(objs, m), 1e-9);
    EXPECT_TRUE(validate(as_layout(s, objs)).empty());
    for (const auto& r : rs) EXPECT_TRUE(relation_satisfied(s, objs, r));
  }
}

TEST(Refine, Deterministic) {
  const RoomSpace s = space(5, 4);
  eni::ScoreMap m = grid_map(5, 4, 0.4, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) m.scores[i] = m.virtual_points[i].x * m.virtual_points[i].y;
  std::vector<PlacedObject> a{obj("a", 1, 1, {1, 1}), obj("b", 0.5, 1.5, {3, 2})};
  auto b = a;
  PlacementConfig cfg;
  cfg.rng_seed = 4;
  eni_refine(a, {s}, {}, m, cfg);
  eni_refine(b, {s}, {}, m, cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].center, b[i].center);
    EXPECT_EQ(a[i].scale_x, b[i].scale_x);
  }
}
