#pragma once

// Test-only reference computations. Nothing here shares code paths with the library's
// visibility sweep, star-polygon envelope or boolean operations beyond the raw ray/segment hit.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "walkfit/geometry/environment.hpp"

namespace walkfit::oracle {

// Radial distances along `rays` evenly spaced directions starting at angle 0, truncated at the
// axis-aligned window of half extent `half_extent` (infinite window when <= 0).
inline std::vector<double> ray_profile(Point2 origin, const std::vector<Segment>& segments, int rays,
                                       double half_extent = 0.0, double phase = 0.0) {
  std::vector<double> r(rays);
  for (int k = 0; k < rays; ++k) {
    const double a = phase + kTwoPi * k / rays;
    const Point2 u{std::cos(a), std::sin(a)};
    double d = ray_cast(origin, u, segments);
    if (half_extent > 0.0) {
      const double wx = std::abs(u.x) > 1e-15 ? half_extent / std::abs(u.x) : 1e300;
      const double wy = std::abs(u.y) > 1e-15 ? half_extent / std::abs(u.y) : 1e300;
      d = std::min({d, wx, wy});
    }
    r[k] = d;
  }
  return r;
}

// Sum of circular sector wedges, each centred on its ray.
inline double sector_area(const std::vector<double>& r) {
  const double dphi = kTwoPi / r.size();
  double a = 0.0;
  for (double v : r) a += 0.5 * v * v * dphi;
  return a;
}

inline double visible_area(Point2 origin, const Environment& env, int rays = 3600,
                           double half_extent = 0.0) {
  return sector_area(ray_profile(origin, env.segments(), rays, half_extent));
}

}  // namespace walkfit::oracle

namespace walkfit::oracle {

// Brute-force pair incompatibility from dense radial profiles. Rays are spaced
// `rays_per_step` per rotation step, rotations land on a grid of `step` radians and are
// linearly interpolated between the two bracketing grid rotations.
struct BruteForceMetric {
  double half_extent = 2.0;
  int directions = 36;
  double rg_min = 0.67;
  double rg_max = 1.24;
  int gain_samples = 10;
  double border_exclusion = 0.5;
  double step = kPi / 360.0;  // 0.5 degree
  int rays_per_step = 10;

  int rays() const { return static_cast<int>(std::lround(kTwoPi / step)) * rays_per_step; }

  std::vector<double> gains() const {
    std::vector<double> g;
    for (int i = 0; i < gain_samples; ++i)
      g.push_back(gain_samples == 1 ? 0.5 * (rg_min + rg_max)
                                    : rg_min + (rg_max - rg_min) * i / (gain_samples - 1));
    if (rg_min <= 1.0 && rg_max >= 1.0 && std::find(g.begin(), g.end(), 1.0) == g.end())
      g.push_back(1.0);
    return g;
  }

  std::vector<int> admissible(Point2 v, const Environment& V) const {
    std::vector<int> keep;
    int longest = 0;
    double longest_len = -1;
    for (int k = 0; k < directions; ++k) {
      const double a = kTwoPi * k / directions;
      const double len = ray_cast(v, {std::cos(a), std::sin(a)}, V.segments());
      if (len > longest_len) {
        longest_len = len;
        longest = k;
      }
      if (len > border_exclusion) keep.push_back(k);
    }
    if (keep.empty()) keep.push_back(longest);
    return keep;
  }

  // Overlap of profile a with profile b shifted by `shift` rays.
  static double shifted_overlap(const std::vector<double>& a, const std::vector<double>& b,
                                long shift) {
    const long n = static_cast<long>(a.size());
    const double dphi = kTwoPi / n;
    double s = 0.0;
    for (long k = 0; k < n; ++k) {
      const double r = std::min(a[k], b[((k - shift) % n + n) % n]);
      s += 0.5 * r * r * dphi;
    }
    return s;
  }

  // `cache` holds one overlap per rotation grid step, NaN until computed.
  double rotated_overlap(const std::vector<double>& v, const std::vector<double>& p, double angle,
                         std::vector<double>& cache) const {
    const long grid = static_cast<long>(cache.size());
    auto at = [&](long m) {
      const long slot = ((m % grid) + grid) % grid;
      if (std::isnan(cache[slot])) cache[slot] = shifted_overlap(v, p, slot * rays_per_step);
      return cache[slot];
    };
    const double t = angle / step;
    const double lo = std::floor(t);
    const double f = t - lo;
    const double o0 = at(static_cast<long>(lo));
    if (f < 1e-12) return o0;
    return (1.0 - f) * o0 + f * at(static_cast<long>(lo) + 1);
  }

  double pair(Point2 v, Point2 p, const Environment& V, const Environment& P) const {
    const auto rv = ray_profile(v, V.segments(), rays(), half_extent);
    const auto rp = ray_profile(p, P.segments(), rays(), half_extent);
    const double area_v = sector_area(rv);
    const auto dirs = admissible(v, V);
    const auto gs = gains();
    std::vector<double> cache(static_cast<std::size_t>(rays() / rays_per_step),
                              std::numeric_limits<double>::quiet_NaN());
    double sum = 0.0;
    for (int k : dirs) {
      const double theta = kTwoPi * k / directions;
      double best = 0.0;
      for (double g : gs) best = std::max(best, rotated_overlap(rv, rp, (g - 1.0) * theta, cache));
      sum += std::max(0.0, area_v - best);
    }
    return sum / dirs.size();
  }

  double point(Point2 v, const std::vector<Point2>& ps, const Environment& V,
               const Environment& P) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& p : ps) best = std::min(best, pair(v, p, V, P));
    return best;
  }
};

}  // namespace walkfit::oracle
