#pragma once

// Conforming Delaunay triangulation of an environment's free space with area-bounded
// refinement (Bowyer-Watson insertion, circumcenter refinement, encroached-subsegment
// splitting). Used to spread sample points evenly over free space.

#include <array>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "walkfit/geometry/environment.hpp"

namespace walkfit {

struct DelaunayOptions {
  double max_area = 1.0;          // refine every interior triangle above this area
  double boundary_margin = 0.01;  // sample points keep at least this distance to every edge
  double max_radius_edge = 1.4142135623730951;  // quality bound, only for triangles above max_area / 4
  std::size_t min_interior = 0;   // keep splitting the largest triangle until this many
                                  // non-constraint vertices exist
  std::size_t max_steps = 0;      // 0 selects a budget from the target density
};

class ConformingDelaunay {
 public:
  struct Triangle {
    std::array<int, 3> v{};
    std::array<int, 3> nb{-1, -1, -1};  // nb[k] is across the edge opposite v[k]
    bool alive = true;
    bool inside = false;
  };

  ConformingDelaunay(const PolygonSet& domain, DelaunayOptions opts)
      : domain_(domain), opts_(opts) {
    init_super_triangle();
    const double spacing = std::sqrt(opts_.max_area);
    for (const std::vector<Point2>& ring : domain_.oriented_rings()) {
      const std::size_t n = ring.size();
      std::vector<int> ids;
      for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[i];
        const Point2 b = ring[(i + 1) % n];
        const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing)));
        for (int k = 0; k < pieces; ++k) ids.push_back(insert_vertex(a + (b - a) * (double(k) / pieces), true));
      }
      for (std::size_t i = 0; i < ids.size(); ++i) subsegments_.push_back({ids[i], ids[(i + 1) % ids.size()]});
    }
    subsegment_alive_.assign(subsegments_.size(), 1);
  }

  void refine() {
    const double max_area = opts_.max_area;
    const std::size_t budget =
        opts_.max_steps != 0
            ? opts_.max_steps
            : static_cast<std::size_t>(60.0 * domain_.area() / max_area) + 40 * subsegments_.size() +
                  20 * opts_.min_interior + 2000;
    std::vector<std::size_t> queue;
    for (std::size_t s = 0; s < subsegments_.size(); ++s)
      if (encroached_by_any(s)) queue.push_back(s);
    std::size_t steps = 0;
    while (true) {
      if (++steps > budget) fail("refinement did not converge within " + std::to_string(budget) + " steps");
      if (!queue.empty()) {
        const std::size_t s = queue.back();
        queue.pop_back();
        if (s >= subsegments_.size() || !subsegment_alive_[s]) continue;
        if (!encroached_by_any(s)) continue;
        split_subsegment(s, queue);
        continue;
      }
      const int bad = worst_triangle();
      if (bad < 0) break;
      const Point2 c = circumcenter(bad);
      std::vector<std::size_t> hits;
      for (std::size_t s = 0; s < subsegments_.size(); ++s)
        if (subsegment_alive_[s] && encroaches(c, s)) hits.push_back(s);
      if (!hits.empty()) {
        for (std::size_t s : hits) split_subsegment(s, queue);
        continue;
      }
      if (!domain_.contains(c) || locate(c) < 0) {
        split_subsegment(nearest_subsegment(c), queue);
        continue;
      }
      insert_vertex(c, false);
      ++interior_vertices_;
    }
  }

  const std::vector<Point2>& points() const { return points_; }
  bool is_constraint_vertex(std::size_t i) const { return on_constraint_[i]; }
  bool is_super_vertex(std::size_t i) const { return i < 3; }
  const std::vector<Triangle>& triangles() const { return tris_; }

  std::size_t interior_triangle_count() const {
    std::size_t n = 0;
    for (const Triangle& t : tris_) n += (t.alive && t.inside) ? 1 : 0;
    return n;
  }

 private:
  struct Subsegment {
    int a;
    int b;
  };

  [[noreturn]] void fail(const std::string& why) const {
    std::ostringstream os;
    os << why << " (vertices=" << points_.size() << ", triangles=" << interior_triangle_count()
       << ", subsegments=" << subsegments_.size() << ", max_area=" << opts_.max_area << ")";
    throw SamplingFailure(os.str());
  }

  void init_super_triangle() {
    Point2 lo{1e300, 1e300}, hi{-1e300, -1e300};
    for (const PolygonWithHoles& part : domain_.parts)
      for (const Point2& p : part.outer.vertices()) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
      }
    const Point2 c = (lo + hi) * 0.5;
    const double m = 20.0 * std::max({hi.x - lo.x, hi.y - lo.y, 1.0});
    points_ = {c + Point2{-m, -m}, c + Point2{m, -m}, c + Point2{0.0, m}};
    on_constraint_ = {false, false, false};
    tris_.push_back(Triangle{{0, 1, 2}, {-1, -1, -1}, true, false});
  }

  double tri_area(const Triangle& t) const {
    return 0.5 * orient(points_[t.v[0]], points_[t.v[1]], points_[t.v[2]]);
  }

  Point2 circumcenter(int ti) const {
    const Triangle& t = tris_[ti];
    const Point2 a = points_[t.v[0]];
    const Point2 b = points_[t.v[1]] - a;
    const Point2 c = points_[t.v[2]] - a;
    const double d = 2.0 * cross(b, c);
    const double b2 = norm2(b);
    const double c2 = norm2(c);
    return a + Point2{(c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d};
  }

  bool in_circumcircle(int ti, Point2 p) const {
    const Triangle& t = tris_[ti];
    const Point2 a = points_[t.v[0]] - p;
    const Point2 b = points_[t.v[1]] - p;
    const Point2 c = points_[t.v[2]] - p;
    const double det = norm2(a) * cross(b, c) - norm2(b) * cross(a, c) + norm2(c) * cross(a, b);
    return det > 0.0;
  }

  int locate(Point2 p) const {
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
      const Triangle& t = tris_[i];
      if (!t.alive) continue;
      const Point2 a = points_[t.v[0]];
      const Point2 b = points_[t.v[1]];
      const Point2 c = points_[t.v[2]];
      const double scale = 1e-12 * (norm2(b - a) + norm2(c - a));
      if (orient(a, b, p) >= -scale && orient(b, c, p) >= -scale && orient(c, a, p) >= -scale) return i;
    }
    return -1;
  }

  int insert_vertex(Point2 p, bool constraint) {
    const int seed = locate(p);
    if (seed < 0) fail("point outside triangulation");
    const int pi = static_cast<int>(points_.size());
    points_.push_back(p);
    on_constraint_.push_back(constraint);

    std::vector<char> in_cavity(tris_.size(), 0);
    std::vector<int> cavity{seed};
    in_cavity[seed] = 1;
    for (std::size_t k = 0; k < cavity.size(); ++k) {
      for (int nb : tris_[cavity[k]].nb) {
        if (nb < 0 || in_cavity[nb] || !in_circumcircle(nb, p)) continue;
        in_cavity[nb] = 1;
        cavity.push_back(nb);
      }
    }

    struct Edge {
      int a, b, outer;
    };
    std::vector<Edge> rim;
    while (true) {
      rim.clear();
      int reject = -1;
      int force = -1;
      for (int ti : cavity) {
        const Triangle& t = tris_[ti];
        for (int k = 0; k < 3; ++k) {
          const int nb = t.nb[k];
          if (nb >= 0 && in_cavity[nb]) continue;
          const int a = t.v[(k + 1) % 3];
          const int b = t.v[(k + 2) % 3];
          if (orient(points_[a], points_[b], p) <= 0.0) {
            // p on the rim edge of the seed: the triangle across must be re-triangulated too.
            if (ti == seed && nb >= 0 && force < 0) force = nb;
            else if (ti != seed && reject < 0) reject = ti;
          }
          rim.push_back({a, b, nb});
        }
      }
      if (force >= 0) {
        in_cavity[force] = 1;
        cavity.push_back(force);
        continue;
      }
      if (reject < 0) break;
      in_cavity[reject] = 0;
      cavity.erase(std::find(cavity.begin(), cavity.end(), reject));
    }

    std::vector<std::pair<int, int>> by_first;
    std::vector<std::pair<int, int>> by_second;
    for (const Edge& e : rim) {
      const int ti = static_cast<int>(tris_.size());
      Triangle t;
      t.v = {e.a, e.b, pi};
      t.nb = {-1, -1, e.outer};
      tris_.push_back(t);
      by_first.push_back({e.a, ti});
      by_second.push_back({e.b, ti});
      if (e.outer >= 0) {
        Triangle& o = tris_[e.outer];
        for (int k = 0; k < 3; ++k)
          if (o.v[(k + 1) % 3] == e.b && o.v[(k + 2) % 3] == e.a) o.nb[k] = ti;
      }
    }
    for (std::size_t r = 0; r < rim.size(); ++r) {
      Triangle& t = tris_[by_first[r].second];
      for (const auto& [v, ti] : by_first)
        if (v == t.v[1]) t.nb[0] = ti;
      for (const auto& [v, ti] : by_second)
        if (v == t.v[0]) t.nb[1] = ti;
    }
    for (int ti : cavity) tris_[ti].alive = false;
    for (std::size_t ti = tris_.size() - rim.size(); ti < tris_.size(); ++ti) classify(static_cast<int>(ti));
    return pi;
  }

  void classify(int ti) {
    Triangle& t = tris_[ti];
    if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) {
      t.inside = false;
      return;
    }
    const Point2 c = (points_[t.v[0]] + points_[t.v[1]] + points_[t.v[2]]) / 3.0;
    t.inside = domain_.contains(c);
  }

  bool encroaches(Point2 p, std::size_t s) const {
    const Point2 a = points_[subsegments_[s].a];
    const Point2 b = points_[subsegments_[s].b];
    return dot(a - p, b - p) < -1e-12 * norm2(b - a);
  }

  bool encroached_by_any(std::size_t s) const {
    for (std::size_t i = 3; i < points_.size(); ++i) {
      if (static_cast<int>(i) == subsegments_[s].a || static_cast<int>(i) == subsegments_[s].b) continue;
      if (encroaches(points_[i], s)) return true;
    }
    return false;
  }

  std::size_t nearest_subsegment(Point2 p) const {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t s = 0; s < subsegments_.size(); ++s) {
      if (!subsegment_alive_[s]) continue;
      const double d = distance_to_segment(p, points_[subsegments_[s].a], points_[subsegments_[s].b]);
      if (d < bd) {
        bd = d;
        best = s;
      }
    }
    return best;
  }

  void split_subsegment(std::size_t s, std::vector<std::size_t>& queue) {
    const Subsegment seg = subsegments_[s];
    const Point2 a = points_[seg.a];
    const Point2 b = points_[seg.b];
    if (distance(a, b) < 1e-4 * std::sqrt(opts_.max_area))
      fail("subsegment shrank below resolution near (" + std::to_string(a.x) + ", " +
           std::to_string(a.y) + "); needle geometry");
    const int m = insert_vertex((a + b) * 0.5, true);
    subsegment_alive_[s] = 0;
    subsegments_.push_back({seg.a, m});
    subsegment_alive_.push_back(1);
    subsegments_.push_back({m, seg.b});
    subsegment_alive_.push_back(1);
    for (std::size_t k = subsegments_.size() - 2; k < subsegments_.size(); ++k)
      if (encroached_by_any(k)) queue.push_back(k);
    for (std::size_t k = 0; k + 2 < subsegments_.size(); ++k)
      if (subsegment_alive_[k] && encroaches(points_[m], k)) queue.push_back(k);
  }

  int worst_triangle() const {
    int best = -1;
    double best_area = 0.0;
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      const Triangle& t = tris_[i];
      if (!t.alive || !t.inside) continue;
      const double area = tri_area(t);
      bool bad = area > opts_.max_area;
      if (!bad && area > 0.25 * opts_.max_area) {
        const Point2 a = points_[t.v[0]], b = points_[t.v[1]], c = points_[t.v[2]];
        const double shortest = std::sqrt(std::min({norm2(b - a), norm2(c - b), norm2(a - c)}));
        const double circumradius = distance(a, circumcenter(static_cast<int>(i)));
        bad = circumradius / shortest > opts_.max_radius_edge;
      }
      if (bad && area > best_area) {
        best_area = area;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 || interior_vertices_ >= opts_.min_interior) return best;
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      const Triangle& t = tris_[i];
      if (!t.alive || !t.inside) continue;
      const double area = tri_area(t);
      if (area > best_area) {
        best_area = area;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  PolygonSet domain_;
  DelaunayOptions opts_;
  std::vector<Point2> points_;
  std::vector<bool> on_constraint_;
  std::vector<Triangle> tris_;
  std::vector<Subsegment> subsegments_;
  std::vector<char> subsegment_alive_;
  std::size_t interior_vertices_ = 0;
};

// Evenly spread points over an environment's free space: the interior vertices of a conforming
// Delaunay triangulation refined to triangles of at most free_area / target_count, then
// refined largest-first until about `target_count` interior vertices exist.
inline std::vector<Point2> delaunay_sample(const Environment& env, int target_count,
                                           DelaunayOptions opts = {}) {
  if (target_count <= 0) throw ConfigError("sample target must be positive");
  const double free_area = env.free_area();
  if (!(free_area > kSliverArea)) throw SamplingFailure("free space has zero area");
  opts.max_area = free_area / target_count;
  opts.min_interior = static_cast<std::size_t>(target_count);
  ConformingDelaunay cdt(env.free_space(), opts);
  cdt.refine();
  std::vector<Point2> out;
  const std::vector<Point2>& pts = cdt.points();
  for (std::size_t i = 3; i < pts.size(); ++i) {
    if (cdt.is_constraint_vertex(i)) continue;
    if (!env.in_free_space(pts[i], opts.boundary_margin)) continue;
    out.push_back(pts[i]);
  }
  if (out.empty()) throw SamplingFailure("no interior sample points; increase the sample target");
  return out;
}

}  // namespace walkfit
