#pragma once

// Per-pair and per-point incompatibility. A score is the visible local area of the virtual
// point that the physical point cannot reproduce under the best admissible rotation gain,
// averaged over the walking directions the virtual point allows.

#include <algorithm>
#include <limits>
#include <vector>

#include "walkfit/eni/config.hpp"
#include "walkfit/geometry/boolean.hpp"
#include "walkfit/geometry/star.hpp"
#include "walkfit/geometry/visibility.hpp"

namespace walkfit::eni {

inline PolygonSet local_visibility(const Environment& env, Point2 p, const MetricConfig& cfg) {
  return clip_to_window(visibility_polygon(p, env), p, cfg.window_half_extent);
}

// The same region in polar form around p. Window and visibility polygon are both star-shaped
// around p, so their intersection is the pointwise minimum of the two radial functions.
inline StarPolygon local_star(const Environment& env, Point2 p, double half_extent) {
  if (!(half_extent > 0.0)) throw InvalidQuery("window half extent must be positive");
  const StarPolygon vis = StarPolygon::from_polygon(p, visibility_polygon(p, env));
  const StarPolygon window =
      StarPolygon::from_polygon(p, SimplePolygon::square(p, half_extent));
  return star_intersection(vis, window);
}

// Overlap in the literal set form a \ (a \ b).
inline double shape_similarity(const PolygonSet& v_poly, const PolygonSet& p_poly) {
  return difference(v_poly, difference(v_poly, p_poly)).area();
}

struct Directions {
  std::vector<int> indices;  // into the config's DirectionSet
  bool fallback = false;     // every direction was excluded; kept the longest free ray
};

inline Directions admissible_directions(const Environment& env, Point2 v, const MetricConfig& cfg) {
  Directions out;
  const int n = cfg.directions.count;
  if (cfg.original_eni) {
    for (int k = 0; k < n; ++k) out.indices.push_back(k);
    return out;
  }
  const double limit = cfg.border_exclusion_distance;
  int longest = 0;
  double longest_len = -1.0;
  for (int k = 0; k < n; ++k) {
    const double len = env.ray_distance(v, cfg.directions.angle(k));
    if (len > longest_len) {
      longest_len = len;
      longest = k;
    }
    if (!(len <= limit)) out.indices.push_back(k);
  }
  if (out.indices.empty()) {
    out.indices.push_back(longest);
    out.fallback = true;
  }
  return out;
}

// Relative rotations the physical polygon is tried at, per direction. Identical angles share
// one slot so the rotated polygons can be computed once per physical point.
class RotationPlan {
 public:
  explicit RotationPlan(const MetricConfig& cfg) {
    cfg.validate();
    const std::vector<double> gains = cfg.gains.values();
    const int n = cfg.directions.count;
    per_direction_.resize(static_cast<std::size_t>(n));
    if (cfg.original_eni) {
      // One shared candidate list: every direction angle as an unconstrained rotation.
      std::vector<int> all;
      for (int k = 0; k < n; ++k) all.push_back(slot(cfg.directions.angle(k)));
      for (auto& d : per_direction_) d = all;
    } else {
      for (int k = 0; k < n; ++k) {
        const double theta = cfg.directions.gain_angle(k);
        for (double g : gains) {
          const int s = slot((g - 1.0) * theta);
          auto& d = per_direction_[static_cast<std::size_t>(k)];
          if (std::find(d.begin(), d.end(), s) == d.end()) d.push_back(s);
        }
      }
    }
    identity_everywhere_ = true;
    for (const auto& d : per_direction_)
      identity_everywhere_ = identity_everywhere_ && std::find(d.begin(), d.end(), 0) != d.end();
    if (angles_.empty() || angles_.front() != 0.0) identity_everywhere_ = false;
  }

  const std::vector<double>& angles() const { return angles_; }
  const std::vector<int>& slots(int direction) const {
    return per_direction_[static_cast<std::size_t>(direction)];
  }
  // Zero rotation is slot 0 and is a candidate for every direction.
  bool identity_everywhere() const { return identity_everywhere_; }

 private:
  int slot(double angle) {
    if (angles_.empty()) angles_.push_back(0.0);
    if (angle == 0.0) return 0;
    for (std::size_t i = 0; i < angles_.size(); ++i)
      if (angles_[i] == angle) return static_cast<int>(i);
    angles_.push_back(angle);
    return static_cast<int>(angles_.size() - 1);
  }

  std::vector<double> angles_;
  std::vector<std::vector<int>> per_direction_;
  bool identity_everywhere_ = false;
};

struct VirtualSite {
  Point2 point;
  StarPolygon view;
  Directions directions;
};

struct PhysicalSite {
  Point2 point;
  std::vector<StarPolygon> rotated;  // one per RotationPlan slot
};

inline VirtualSite make_virtual_site(const Environment& env, Point2 p, const MetricConfig& cfg) {
  return {p, local_star(env, p, cfg.window_half_extent), admissible_directions(env, p, cfg)};
}

inline PhysicalSite make_physical_site(const Environment& env, Point2 p, const MetricConfig& cfg,
                                       const RotationPlan& plan) {
  PhysicalSite site{p, {}};
  const StarPolygon base = local_star(env, p, cfg.window_half_extent);
  site.rotated.reserve(plan.angles().size());
  for (double a : plan.angles()) site.rotated.push_back(a == 0.0 ? base : base.rotated(a));
  return site;
}

// Area differences below this are rounding in the envelope sums, not incompatibility.
inline constexpr double kAreaTolerance = 1e-9;

// Returns +inf as soon as the score is known to exceed `cutoff`. Terms are non-negative, so
// the partial average over all directions is a lower bound of the result.
inline double pair_score(const VirtualSite& v, const PhysicalSite& p, const RotationPlan& plan,
                         double cutoff = std::numeric_limits<double>::infinity()) {
  const double area_v = v.view.area();
  const double n = static_cast<double>(v.directions.indices.size());
  // Overlap never exceeds the physical area.
  if (area_v - p.rotated.front().area() - kAreaTolerance > cutoff)
    return std::numeric_limits<double>::infinity();
  const double full = area_v - kAreaTolerance;
  if (plan.identity_everywhere() && star_overlap_area(v.view, p.rotated.front()) >= full)
    return 0.0;
  double sum = 0.0;
  for (int k : v.directions.indices) {
    double best = 0.0;
    for (int s : plan.slots(k)) {
      best = std::max(best, star_overlap_area(v.view, p.rotated[static_cast<std::size_t>(s)]));
      if (best >= full) break;
    }
    if (best < full) sum += area_v - best;
    if (sum / n > cutoff) return std::numeric_limits<double>::infinity();
  }
  return sum / n;
}

inline double pair_score(Point2 v_p, Point2 p_p, const Environment& V, const Environment& P,
                         const MetricConfig& cfg) {
  const RotationPlan plan(cfg);
  return pair_score(make_virtual_site(V, v_p, cfg), make_physical_site(P, p_p, cfg, plan), plan);
}

struct PointScore {
  double score = 0.0;
  std::size_t physical_index = 0;  // minimizing physical point, lowest index on ties
};

inline PointScore point_score(Point2 v_p, const Environment& V, const Environment& P,
                              const std::vector<Point2>& physical_points, const MetricConfig& cfg) {
  if (physical_points.empty()) throw ConfigError("physical sample set is empty");
  const RotationPlan plan(cfg);
  const VirtualSite v = make_virtual_site(V, v_p, cfg);
  PointScore best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < physical_points.size(); ++i) {
    const double s = pair_score(v, make_physical_site(P, physical_points[i], cfg, plan), plan,
                                best.score);
    if (s < best.score) best = {s, i};
    if (best.score == 0.0) break;
  }
  return best;
}

}  // namespace walkfit::eni
