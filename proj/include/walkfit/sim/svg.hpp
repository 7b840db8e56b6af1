#pragma once

// Debug drawing of one trial: the virtual plan with the virtual path on the left, the physical
// room with the physical path on the right, at the same scale.

#include <ostream>

#include "walkfit/eni/export.hpp"
#include "walkfit/sim/trial.hpp"

namespace walkfit::sim {

inline void write_trajectory_svg(std::ostream& out, const Environment& V, const std::vector<PlacedObject>& objects,
                                 const Environment& P, const CollisionReport& r, double pixels_per_meter = 40.0) {
  const auto [vlo, vhi] = V.boundary().bounds();
  const auto [plo, phi] = P.boundary().bounds();
  const double pad = 0.5;
  const double gap = 1.0;
  const double height = std::max(vhi.y - vlo.y, phi.y - plo.y) + 2 * pad;
  const double width = (vhi.x - vlo.x) + (phi.x - plo.x) + 2 * pad + gap;
  const double px = vhi.x - vlo.x + pad + gap;  // left edge of the physical panel

  auto xy = [&](Point2 p, Point2 lo, double shift) {
    return eni::fmt_fixed((p.x - lo.x + pad + shift) * pixels_per_meter, 2) + "," +
           eni::fmt_fixed((height - (p.y - lo.y + pad)) * pixels_per_meter, 2);
  };
  auto polygon = [&](const SimplePolygon& poly, Point2 lo, double shift, const char* style) {
    out << "<path d=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) out << (i == 0 ? "M" : " L") << xy(poly[i], lo, shift);
    out << " Z\" " << style << "/>\n";
  };
  auto path = [&](bool physical, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
      const PoseSample& s = r.trajectory[i];
      out << (i == 0 ? "" : " ")
          << (physical ? xy(s.physical_pos, plo, px) : xy(s.virtual_pos, vlo, 0.0));
    }
    out << "\"/>\n";
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << eni::fmt_fixed(width * pixels_per_meter, 0)
      << "\" height=\"" << eni::fmt_fixed(height * pixels_per_meter, 0) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  polygon(V.boundary(), vlo, 0.0, "fill=\"none\" stroke=\"black\"");
  for (const SimplePolygon& h : V.obstacles()) polygon(h, vlo, 0.0, "fill=\"#9a9a9a\" stroke=\"none\"");
  for (const PlacedObject& o : objects) polygon(footprint_box(o).polygon(), vlo, 0.0, "fill=\"#c8b48c\" stroke=\"none\"");
  polygon(P.boundary(), plo, px, "fill=\"none\" stroke=\"black\"");
  for (const SimplePolygon& h : P.obstacles()) polygon(h, plo, px, "fill=\"#9a9a9a\" stroke=\"none\"");
  path(false, "#1f5fbf");
  path(true, "#c0392b");
  out << "</svg>\n";
}

}  // namespace walkfit::sim
