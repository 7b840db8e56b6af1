#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "walkfit/eni/score_map.hpp"

namespace walkfit::eni {

inline std::string fmt_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  // No "-0.000000" in the output.
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline void write_csv(std::ostream& out, const ScoreMap& map) {
  out << "x,y,score\n";
  for (std::size_t i = 0; i < map.size(); ++i)
    out << fmt_fixed(map.virtual_points[i].x) << ',' << fmt_fixed(map.virtual_points[i].y) << ','
        << fmt_fixed(map.scores[i]) << '\n';
}

// Purple (low) to yellow (high), sampled from the viridis ramp.
inline std::string ramp_color(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(k);
  char buf[8];
  int c[3];
  for (int j = 0; j < 3; ++j)
    c[j] = static_cast<int>(std::lround(stops[k][j] + f * (stops[k + 1][j] - stops[k][j])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

struct SvgOverlay {
  std::vector<SimplePolygon> outlines;    // drawn as thin black lines
  std::vector<SimplePolygon> filled;      // drawn as grey shapes (walls, furniture)
};

inline void write_svg(std::ostream& out, const ScoreMap& map, const SvgOverlay& overlay,
                      double pixels_per_meter = 40.0) {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  auto grow = [&](Point2 p) {
    if (first) {
      x0 = x1 = p.x;
      y0 = y1 = p.y;
      first = false;
    }
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  };
  for (const Point2& p : map.virtual_points) grow(p);
  for (const auto& poly : overlay.outlines)
    for (const Point2& p : poly.vertices()) grow(p);
  const double pad = 0.5;
  const double w = (x1 - x0 + 2 * pad) * pixels_per_meter;
  const double h = (y1 - y0 + 2 * pad) * pixels_per_meter;
  // SVG y grows downwards.
  auto sx = [&](double x) { return fmt_fixed((x - x0 + pad) * pixels_per_meter, 2); };
  auto sy = [&](double y) { return fmt_fixed((y1 - y + pad) * pixels_per_meter, 2); };
  auto path = [&](const SimplePolygon& poly) {
    std::string d;
    for (std::size_t i = 0; i < poly.size(); ++i)
      d += (i == 0 ? "M" : " L") + sx(poly[i].x) + "," + sy(poly[i].y);
    return d + " Z";
  };

  double hi = 0.0;
  for (double s : map.scores) hi = std::max(hi, s);
  const double radius = std::clamp(
      0.5 * std::sqrt((x1 - x0) * (y1 - y0) / std::max<std::size_t>(map.size(), 1)), 0.05, 0.5);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_fixed(w, 0) << "\" height=\""
      << fmt_fixed(h, 0) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& poly : overlay.filled)
    out << "<path d=\"" << path(poly) << "\" fill=\"#9a9a9a\" stroke=\"none\"/>\n";
  for (std::size_t i = 0; i < map.size(); ++i)
    out << "<circle cx=\"" << sx(map.virtual_points[i].x) << "\" cy=\""
        << sy(map.virtual_points[i].y) << "\" r=\"" << fmt_fixed(radius * pixels_per_meter, 2)
        << "\" fill=\"" << ramp_color(hi > 0 ? map.scores[i] / hi : 0.0) << "\"/>\n";
  for (const auto& poly : overlay.outlines)
    out << "<path d=\"" << path(poly) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out << "</svg>\n";
}

}  // namespace walkfit::eni
