#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "walkfit/geometry/boolean.hpp"
#include "walkfit/geometry/delaunay.hpp"
#include "walkfit/geometry/star.hpp"
#include "walkfit/geometry/visibility.hpp"

using namespace walkfit;

namespace {

SimplePolygon rect(double x0, double y0, double x1, double y1) {
  return SimplePolygon::rectangle({x0, y0}, {x1, y1});
}

// Random star-shaped polygon around `c` with n >= 4 vertices, radii in [rmin, rmax].
SimplePolygon random_star(std::mt19937& rng, Point2 c, double rmin, double rmax, int n) {
  // Jittered angles keep every angular gap below π so `c` stays in the kernel.
  std::uniform_real_distribution<double> jitter(0.1, 0.9);
  std::uniform_real_distribution<double> rad(rmin, rmax);
  const double phase = kTwoPi * jitter(rng);
  std::vector<Point2> pts;
  for (int k = 0; k < n; ++k) pts.push_back(c + unit_vector(phase + (k + jitter(rng)) * kTwoPi / n) * rad(rng));
  return SimplePolygon::from(pts);
}

Environment l_shaped_room() {
  return Environment::make(SimplePolygon::from({{0, 0}, {6, 0}, {6, 2}, {2, 2}, {2, 6}, {0, 6}}), {});
}

}  // namespace

TEST(PolygonArea, Examples) {
  EXPECT_DOUBLE_EQ(polygon_area(rect(0, 0, 1, 1)), 1.0);
  EXPECT_DOUBLE_EQ(polygon_area(rect(0, 0, 4, 4)), 16.0);
  EXPECT_DOUBLE_EQ(polygon_area(SimplePolygon::from({{0, 0}, {2, 0}, {0, 2}})), 2.0);
}

TEST(PolygonArea, DegenerateRejected) {
  EXPECT_THROW(SimplePolygon::from({{0, 0}, {1, 1}}), InvalidGeometry);
  EXPECT_THROW(polygon_area(SimplePolygon::unchecked({{0, 0}, {1, 1}})), InvalidGeometry);
  EXPECT_THROW(SimplePolygon::from({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidGeometry);
}

TEST(PolygonArea, ClockwiseInputIsReoriented) {
  const SimplePolygon p = SimplePolygon::from({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_GT(p.area(), 0.0);
}

TEST(BooleanOp, Examples) {
  const SimplePolygon sq = rect(0, 0, 4, 4);
  EXPECT_NEAR(intersection(sq, sq).area(), 16.0, 1e-9);
  EXPECT_NEAR(difference(sq, rect(10, 10, 11, 11)).area(), 16.0, 1e-9);
  const PolygonSet half = intersection(sq, sq.translated({2, 0}));
  EXPECT_NEAR(half.area(), 8.0, 1e-9);
  ASSERT_EQ(half.parts.size(), 1u);
  const auto [lo, hi] = half.parts[0].outer.bounds();
  EXPECT_NEAR(lo.x, 2.0, 1e-9);
  EXPECT_NEAR(hi.x, 4.0, 1e-9);
  EXPECT_NEAR(union_of(sq, sq.translated({2, 0})).area(), 24.0, 1e-9);
}

TEST(BooleanOp, HolesAreKept) {
  const PolygonSet ring = difference(rect(0, 0, 10, 10), rect(4, 4, 6, 6));
  ASSERT_EQ(ring.parts.size(), 1u);
  EXPECT_EQ(ring.parts[0].holes.size(), 1u);
  EXPECT_NEAR(ring.area(), 96.0, 1e-9);
}

TEST(BooleanOp, SliversDropped) {
  const PolygonSet s = intersection(rect(0, 0, 1, 1), rect(1 - 1e-11, 0, 2, 1));
  EXPECT_TRUE(s.empty());
}

TEST(BooleanOp, AlgebraOnRandomPairs) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> off(-1.5, 1.5);
  for (int trial = 0; trial < 60; ++trial) {
    const SimplePolygon a = random_star(rng, {0, 0}, 0.5, 2.0, 9);
    const SimplePolygon b = random_star(rng, {off(rng), off(rng)}, 0.5, 2.0, 7);
    const double area_a = a.area();
    const double inter = intersection(a, b).area();
    const double diff = difference(a, b).area();
    EXPECT_NEAR(inter + diff, area_a, 1e-6 * area_a) << trial;
    // a \ (a \ b) == a ∩ b
    EXPECT_NEAR(overlap_area_literal(a, b), inter, 1e-6 * std::max(area_a, 1.0)) << trial;
  }
}

TEST(ClipToWindow, Examples) {
  const SimplePolygon room = rect(0, 0, 20, 20);
  const PolygonSet w = clip_to_window(room, {10, 10}, 2.0);
  EXPECT_NEAR(w.area(), 16.0, 1e-9);
  EXPECT_LE(clip_to_window(rect(0, 0, 30, 7), {3, 3}, 2.0).area(), 16.0 + 1e-9);
  const SimplePolygon small = rect(9.5, 9.5, 10.5, 10.5);
  EXPECT_NEAR(clip_to_window(small, {10, 10}, 2.0).area(), small.area(), 1e-12);
  EXPECT_THROW(clip_to_window(room, {10, 10}, 0.0), InvalidQuery);
}

TEST(RigidTransforms, Examples) {
  const SimplePolygon sq = rect(1, 1, 3, 2);
  const SimplePolygon full = rotate_about(sq, {0.3, -0.7}, kTwoPi);
  for (std::size_t i = 0; i < sq.size(); ++i) {
    EXPECT_NEAR(full[i].x, sq[i].x, 1e-12);
    EXPECT_NEAR(full[i].y, sq[i].y, 1e-12);
  }
  const SimplePolygon unit = rect(0, 0, 2, 2);
  const SimplePolygon quarter = rotate_about(unit, {1, 1}, kPi / 2);
  EXPECT_NEAR(intersection(unit, quarter).area(), 4.0, 1e-9);
  const SimplePolygon back = translate(translate(sq, {3.5, -1.25}), {-3.5, 1.25});
  for (std::size_t i = 0; i < sq.size(); ++i) {
    EXPECT_NEAR(back[i].x, sq[i].x, 1e-12);
    EXPECT_NEAR(back[i].y, sq[i].y, 1e-12);
  }
}

TEST(RigidTransforms, PreserveArea) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const SimplePolygon p = random_star(rng, {u(rng), u(rng)}, 0.3, 3.0, 8);
    const double a = p.area();
    EXPECT_NEAR(rotate_about(p, {u(rng), u(rng)}, u(rng)).area(), a, 1e-9 * a);
    EXPECT_NEAR(translate(p, {u(rng), u(rng)}).area(), a, 1e-9 * a);
  }
}

TEST(Visibility, ConvexRoomSeesEverything) {
  const Environment env = Environment::make(rect(0, 0, 5, 3), {});
  const SimplePolygon vis = visibility_polygon({2.5, 1.5}, env);
  EXPECT_NEAR(vis.area(), 15.0, 1e-9);
  EXPECT_EQ(vis.size(), 4u);
}

TEST(Visibility, LShapedRoomOccludes) {
  const Environment env = l_shaped_room();
  const double room = env.boundary().area();
  const SimplePolygon vis = visibility_polygon({5, 1}, env);
  EXPECT_LT(vis.area(), room - 1.0);
  EXPECT_NEAR(vis.area(), oracle::visible_area({5, 1}, env), 0.01 * vis.area());
}

TEST(Visibility, MatchesRayCastOracleWithObstacle) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double w = 6 + 6 * u(rng), h = 5 + 5 * u(rng);
    const double ox = 1 + (w - 3) * u(rng), oy = 1 + (h - 3) * u(rng);
    const Environment env = Environment::make(rect(0, 0, w, h), {rect(ox, oy, ox + 1 + u(rng), oy + 0.5 + u(rng))});
    Point2 p;
    do {
      p = {w * u(rng), h * u(rng)};
    } while (!env.in_free_space(p, 0.05));
    const double exact = visibility_polygon(p, env).area();
    EXPECT_NEAR(exact, oracle::visible_area(p, env), 0.01 * exact) << trial;
  }
}

TEST(Visibility, SubsetOfFreeSpace) {
  const Environment env =
      Environment::make(rect(0, 0, 10, 8), {rect(2, 2, 3, 6), rect(6, 1, 8, 2), rect(0, 6, 1, 8)});
  for (Point2 p : {Point2{1, 1}, Point2{5, 5}, Point2{9, 7}, Point2{2.5, 7}}) {
    const SimplePolygon vis = visibility_polygon(p, env);
    EXPECT_LT(difference(vis, env.free_space()).area(), 1e-6 * vis.area());
  }
}

TEST(Visibility, ObstacleTouchingBoundary) {
  const Environment env = Environment::make(rect(0, 0, 10, 10), {rect(0, 4, 6, 5)});
  const Point2 p{2, 2};
  const double exact = visibility_polygon(p, env).area();
  EXPECT_NEAR(exact, oracle::visible_area(p, env), 0.01 * exact);
}

TEST(Visibility, InvalidOrigins) {
  const Environment env = Environment::make(rect(0, 0, 10, 10), {rect(4, 4, 6, 6)});
  EXPECT_THROW(visibility_polygon({5, 5}, env), InvalidQuery);
  EXPECT_THROW(visibility_polygon({0, 5}, env), InvalidQuery);
  EXPECT_THROW(visibility_polygon({4, 5}, env), InvalidQuery);
  EXPECT_THROW(visibility_polygon({-1, 5}, env), InvalidQuery);
}

TEST(Environment, Validation) {
  EXPECT_THROW(Environment::make(rect(0, 0, 4, 4), {rect(3, 3, 5, 5)}), InvalidGeometry);
  EXPECT_THROW(Environment::make(rect(0, 0, 4, 4), {rect(1, 1, 3, 3), rect(2, 2, 3.5, 3.5)}),
               InvalidGeometry);
  EXPECT_THROW(Environment::make(rect(0, 0, 4, 4), {rect(0, 0, 4, 4)}), InvalidGeometry);
  EXPECT_NO_THROW(Environment::make(rect(0, 0, 4, 4), {rect(0, 0, 1, 1), rect(1, 0, 2, 1)}));
}

TEST(StarPolygon, OverlapMatchesBooleanIntersection) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const SimplePolygon a = random_star(rng, {0, 0}, 0.3, 2.5, 4 + trial % 9);
    const SimplePolygon b = random_star(rng, {0, 0}, 0.3, 2.5, 4 + trial % 7);
    const double rot = ang(rng);
    const StarPolygon sa = StarPolygon::from_polygon({0, 0}, a);
    const StarPolygon sb = StarPolygon::from_polygon({0, 0}, b).rotated(rot);
    EXPECT_NEAR(sa.area(), a.area(), 1e-9);
    const double expected = intersection(a, rotate_about(b, {0, 0}, rot)).area();
    EXPECT_NEAR(star_overlap_area(sa, sb), expected, 1e-7) << trial;
    EXPECT_NEAR(star_intersection(sa, sb).area(), expected, 1e-7) << trial;
  }
}

TEST(StarPolygon, WindowClipMatchesBooleanClip) {
  const Environment env = l_shaped_room();
  for (Point2 p : {Point2{1, 1}, Point2{1, 5}, Point2{4, 1}, Point2{0.5, 1.8}}) {
    const SimplePolygon vis = visibility_polygon(p, env);
    const StarPolygon local = star_intersection(StarPolygon::from_polygon(p, vis),
                                                StarPolygon::from_polygon(p, SimplePolygon::square(p, 2.0)));
    EXPECT_NEAR(local.area(), clip_to_window(vis, p, 2.0).area(), 1e-9);
  }
}

TEST(DelaunaySample, EmptySquareIsEven) {
  const Environment env = Environment::make(rect(0, 0, 20, 20), {});
  const std::vector<Point2> pts = delaunay_sample(env, 200);
  EXPECT_GE(pts.size(), 150u);
  EXPECT_LE(pts.size(), 400u);
  std::vector<double> nn;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_TRUE(env.in_free_space(pts[i], 0.01));
    double best = 1e300;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j) best = std::min(best, distance(pts[i], pts[j]));
    nn.push_back(best);
  }
  double mean = 0, var = 0;
  for (double d : nn) mean += d;
  mean /= nn.size();
  for (double d : nn) var += (d - mean) * (d - mean);
  const double cv = std::sqrt(var / nn.size()) / mean;
  EXPECT_LT(cv, 0.6);
}

TEST(DelaunaySample, DeterministicAndInsideFreeSpace) {
  const Environment env = Environment::make(
      rect(0, 0, 8, 6), {rect(3, 0, 3.1, 2.5), rect(3, 3.4, 3.1, 6), rect(5, 2, 6, 3)});
  const std::vector<Point2> a = delaunay_sample(env, 150);
  const std::vector<Point2> b = delaunay_sample(env, 150);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(env.in_free_space(a[i], 0.01));
  }
  EXPECT_GT(a.size(), 60u);
}

TEST(DelaunaySample, ZeroFreeAreaFails) {
  EXPECT_THROW(Environment::make(rect(0, 0, 2, 2), {rect(0, 0, 2, 2)}), InvalidGeometry);
  const Environment env = Environment::make(rect(0, 0, 2, 2), {});
  EXPECT_THROW(delaunay_sample(env, 0), ConfigError);
}
