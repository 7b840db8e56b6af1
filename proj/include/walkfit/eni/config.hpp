#pragma once

#include <cmath>
#include <vector>

#include "walkfit/error.hpp"
#include "walkfit/geometry/point.hpp"

namespace walkfit::eni {

// Rotation gains the walker can be redirected with. The uniform grid is extended with the
// identity gain so that zero relative rotation is always a candidate; with a grid that skips
// 1.0 an identical physical room would still score a small incompatibility.
struct GainRange {
  double rg_min = 0.67;
  double rg_max = 1.24;
  int samples = 10;
  bool include_identity = true;

  void validate() const {
    if (!(rg_min > 0.0) || !(rg_min <= rg_max) || !std::isfinite(rg_max))
      throw ConfigError("gain range must satisfy 0 < rg_min <= rg_max");
    if (samples < 1) throw ConfigError("gain samples must be at least 1");
  }

  std::vector<double> values() const {
    std::vector<double> out;
    if (samples == 1) {
      out.push_back(0.5 * (rg_min + rg_max));
    } else {
      for (int i = 0; i < samples; ++i)
        out.push_back(rg_min + (rg_max - rg_min) * i / (samples - 1));
    }
    if (include_identity && rg_min <= 1.0 && 1.0 <= rg_max) {
      bool present = false;
      for (double g : out) present = present || g == 1.0;
      if (!present) out.push_back(1.0);
    }
    return out;
  }
};

struct DirectionSet {
  int count = 36;
  // Signed mode reads directions past 180° as negative angles, so the searched physical
  // rotation (g - 1)·θ stays within ±(g - 1)·180°.
  bool signed_angles = false;

  void validate() const {
    if (count < 4) throw ConfigError("direction count must be at least 4");
  }

  double angle(int k) const { return kTwoPi * k / count; }

  // Angle used in the gain product for direction k.
  double gain_angle(int k) const {
    const double a = angle(k);
    return (signed_angles && a > kPi) ? a - kTwoPi : a;
  }
};

struct MetricConfig {
  double window_half_extent = 2.0;
  GainRange gains;
  DirectionSet directions;
  double border_exclusion_distance = 0.5;
  // Comparison mode: every direction admissible and every direction angle tried as a physical
  // rotation, without the gain bound.
  bool original_eni = false;

  void validate() const {
    if (!(window_half_extent > 0.0) || !std::isfinite(window_half_extent))
      throw ConfigError("window half extent must be positive");
    if (!(border_exclusion_distance >= 0.0))
      throw ConfigError("border exclusion distance must be non-negative");
    gains.validate();
    directions.validate();
  }

  double window_area() const { return 4.0 * window_half_extent * window_half_extent; }
};

}  // namespace walkfit::eni
