#pragma once

// Walker state, gain semantics and a small alignment-seeking redirection controller.

#include <array>
#include <cmath>
#include <vector>

#include "walkfit/geometry/environment.hpp"
#include "walkfit/scene/layout.hpp"

namespace walkfit::sim {

struct GainLimits {
  double rotation_min = 0.67;
  double rotation_max = 1.24;
  double translation_min = 0.86;
  double translation_max = 1.26;
  double min_curvature_radius = 7.5;  // meters

  void validate() const {
    if (!(rotation_min > 0.0) || rotation_min > rotation_max || !(translation_min > 0.0) ||
        translation_min > translation_max || !(min_curvature_radius > 0.0))
      throw ConfigError("gain limits are inconsistent");
  }
};

struct Gains {
  double rotation = 1.0;
  double translation = 1.0;
  int curvature = 0;  // -1 clockwise, 0 none, +1 counter-clockwise, at the minimum radius

  bool identity() const { return rotation == 1.0 && translation == 1.0 && curvature == 0; }
};

struct UserState {
  Point2 physical_pos;
  double physical_heading = 0.0;
  Point2 virtual_pos;
  double virtual_heading = 0.0;
  bool controller_enabled = true;
};

// What the walker does in the virtual world during one tick.
struct VirtualMotion {
  double turn = 0.0;     // radians, signed
  double advance = 0.0;  // meters along the heading after the turn
};

inline double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

// Physical turn = virtual turn / rotation gain, plus curvature while walking; physical
// displacement = virtual displacement / translation gain along the physical heading.
inline UserState step(const UserState& s, const VirtualMotion& m, const Gains& g, const GainLimits& lim = {}) {
  UserState n = s;
  n.virtual_heading = wrap(s.virtual_heading + m.turn);
  n.virtual_pos = s.virtual_pos + unit_vector(n.virtual_heading) * m.advance;
  n.physical_heading = wrap(s.physical_heading + m.turn / g.rotation +
                            g.curvature * m.advance / lim.min_curvature_radius);
  n.physical_pos = s.physical_pos + unit_vector(n.physical_heading) * (m.advance / g.translation);
  return n;
}

struct Probes {
  double range = 6.0;                                      // distances are capped here
  std::array<double, 3> angles{0.0, kPi / 2, -kPi / 2};  // forward, left, right
};

// Virtual world for probing: walls plus furniture footprints.
inline std::vector<Segment> probe_segments(const Environment& env, const std::vector<PlacedObject>& objects) {
  std::vector<Segment> segs = env.segments();
  for (const PlacedObject& o : objects) append_edges(footprint_box(o).polygon(), segs);
  return segs;
}

inline double probe(const std::vector<Segment>& segs, Point2 p, double heading, double angle, double range) {
  return ray_cast(p, unit_vector(heading + angle), segs, range);
}

inline double misalignment(const UserState& s, const std::vector<Segment>& virt, const std::vector<Segment>& phys,
                           const Probes& pr = {}) {
  double m = 0.0;
  for (double a : pr.angles)
    m += std::abs(probe(phys, s.physical_pos, s.physical_heading, a, pr.range) -
                  probe(virt, s.virtual_pos, s.virtual_heading, a, pr.range));
  return m;
}

// Candidate rotation gains, identity first so ties keep the walker unredirected.
inline std::array<double, 7> rotation_candidates(const GainLimits& lim) {
  return {1.0,
          lim.rotation_min,
          lim.rotation_min + (1.0 - lim.rotation_min) / 3.0,
          lim.rotation_min + 2.0 * (1.0 - lim.rotation_min) / 3.0,
          1.0 + (lim.rotation_max - 1.0) / 3.0,
          1.0 + 2.0 * (lim.rotation_max - 1.0) / 3.0,
          lim.rotation_max};
}

// Picks the gains whose one-step-ahead state has the least misalignment among 7 rotation gains
// and 3 curvature directions. Translation gain follows the ratio of forward distances.
inline Gains arc_step(const UserState& s, const VirtualMotion& m, const std::vector<Segment>& virt,
                      const std::vector<Segment>& phys, const GainLimits& lim = {}, const Probes& pr = {}) {
  if (!s.controller_enabled) return {};
  Gains base;
  const double pf = probe(phys, s.physical_pos, s.physical_heading, 0.0, pr.range);
  const double vf = probe(virt, s.virtual_pos, s.virtual_heading, 0.0, pr.range);
  if (pf > 1e-9) base.translation = std::clamp(vf / pf, lim.translation_min, lim.translation_max);
  Gains best = base;
  double best_m = misalignment(step(s, m, base, lim), virt, phys, pr);
  for (double r : rotation_candidates(lim))
    for (int c : {0, 1, -1}) {
      const Gains g{r, base.translation, c};
      const double v = misalignment(step(s, m, g, lim), virt, phys, pr);
      if (v < best_m - 1e-12) {
        best_m = v;
        best = g;
      }
    }
  return best;
}

}  // namespace walkfit::sim
