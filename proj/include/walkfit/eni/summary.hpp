#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "walkfit/eni/score_map.hpp"

namespace walkfit::eni {

struct RoomScore {
  double raw = 0.0;
  int normalized = 1;
};

// Indices of map points inside the room (boundary included).
inline std::vector<std::size_t> points_in(const ScoreMap& map, const SimplePolygon& room) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < map.virtual_points.size(); ++i)
    if (room.contains_closed(map.virtual_points[i])) out.push_back(i);
  return out;
}

inline double room_raw_score(const ScoreMap& map, const std::vector<std::size_t>& room_points,
                             const std::string& room_name = "room") {
  if (room_points.empty())
    throw SamplingFailure(room_name + " contains no sample points; increase the virtual sample count");
  double sum = 0.0;
  for (std::size_t i : room_points) sum += map.scores.at(i);
  return sum / static_cast<double>(room_points.size());
}

// Affine map of the room raws onto 1..10 using the min and max over all rooms. A degenerate
// range (one room, or all equal) gives 10 for positive raws and 1 otherwise.
inline std::vector<RoomScore> normalize_room_scores(const std::vector<double>& raws) {
  std::vector<RoomScore> out;
  if (raws.empty()) return out;
  double lo = raws.front();
  double hi = raws.front();
  for (double r : raws) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  for (double r : raws) {
    int n;
    if (hi - lo <= 1e-12 * std::max(1.0, hi))
      n = r > 0.0 ? 10 : 1;
    else
      n = static_cast<int>(std::lround(1.0 + 9.0 * (r - lo) / (hi - lo)));
    out.push_back({r, std::clamp(n, 1, 10)});
  }
  return out;
}

struct MapSummary {
  double total = 0.0;
  double mean = 0.0;
  double uncovered_total = 0.0;
  double uncovered_mean = 0.0;
  std::size_t uncovered_count = 0;
  bool all_covered = false;  // uncovered_mean is 0 by convention
};

// `covered` is either empty (nothing covered) or one flag per map point.
inline MapSummary map_summary(const ScoreMap& map, const std::vector<char>& covered = {}) {
  if (!covered.empty() && covered.size() != map.size())
    throw ConfigError("coverage flags do not match the score map");
  MapSummary s;
  for (std::size_t i = 0; i < map.size(); ++i) {
    s.total += map.scores[i];
    if (covered.empty() || !covered[i]) {
      s.uncovered_total += map.scores[i];
      ++s.uncovered_count;
    }
  }
  if (map.size() > 0) s.mean = s.total / static_cast<double>(map.size());
  if (s.uncovered_count > 0)
    s.uncovered_mean = s.uncovered_total / static_cast<double>(s.uncovered_count);
  else
    s.all_covered = true;
  return s;
}

}  // namespace walkfit::eni
