#pragma once

// Hand-rolled generators for randomized property tests.

#include <random>
#include <vector>

#include "walkfit/geometry/environment.hpp"

namespace walkfit::gen {

inline SimplePolygon rect(double x0, double y0, double x1, double y1) {
  return SimplePolygon::rectangle({x0, y0}, {x1, y1});
}

// Rectangle `w` x `h` with up to `max_obstacles` disjoint boxes, some of them rotated.
inline Environment random_room(std::mt19937& rng, double w, double h, int max_obstacles) {
  std::uniform_int_distribution<int> count(0, max_obstacles);
  std::uniform_real_distribution<double> size(0.2, 0.9);
  std::uniform_real_distribution<double> turn(0.0, kPi);
  const SimplePolygon boundary = rect(0, 0, w, h);
  std::vector<SimplePolygon> obstacles;
  const int n = count(rng);
  for (int attempt = 0; attempt < 50 && static_cast<int>(obstacles.size()) < n; ++attempt) {
    const double a = size(rng);
    const double b = size(rng);
    std::uniform_real_distribution<double> cx(0.7, w - 0.7);
    std::uniform_real_distribution<double> cy(0.7, h - 0.7);
    const Point2 c{cx(rng), cy(rng)};
    SimplePolygon o = rect(c.x - a / 2, c.y - b / 2, c.x + a / 2, c.y + b / 2);
    if (attempt % 2 == 1) o = o.rotated_about(c, turn(rng));
    bool ok = difference(o, boundary).area() < 1e-12;
    for (const SimplePolygon& q : obstacles)
      ok = ok && distance(o.centroid(), q.centroid()) > 1.5;
    if (ok) obstacles.push_back(o);
  }
  return Environment::make(boundary, obstacles);
}

inline Point2 random_free_point(std::mt19937& rng, const Environment& env, double clearance) {
  const auto [lo, hi] = env.boundary().bounds();
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  for (;;) {
    const Point2 p{ux(rng), uy(rng)};
    if (env.in_free_space(p, clearance)) return p;
  }
}

inline std::vector<Point2> random_free_points(std::mt19937& rng, const Environment& env, int n,
                                              double clearance = 0.05) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) out.push_back(random_free_point(rng, env, clearance));
  return out;
}

}  // namespace walkfit::gen
