#pragma once

// Test-side helpers and brute-force oracles. Nothing here calls the library
// routine it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "thunt/codec.hpp"
#include "thunt/generators.hpp"
#include "thunt/geom.hpp"

namespace support {

using thunt::geom::Point;
using thunt::geom::Polygon;
using thunt::geom::Terrain;

inline Polygon rect(double x0, double y0, double x1, double y1) {
  return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

inline Polygon square(Point c, double side) {
  const double h = side / 2.0;
  return rect(c.x - h, c.y - h, c.x + h, c.y + h);
}

inline Terrain empty_square(double side) { return Terrain(rect(0, 0, side, side), {}); }

/// Rejection-samples a point of the terrain from the outer bounding box.
inline Point sample_in_terrain(thunt::gen::Rng& rng, const Terrain& t) {
  const auto& b = t.outer().bounds();
  for (;;) {
    const Point p{rng.uniform(b.lo.x, b.hi.x), rng.uniform(b.lo.y, b.hi.y)};
    if (thunt::geom::point_in_terrain(p, t)) return p;
  }
}

/// Point on the ring at a uniformly random arc position, by walking edges.
inline Point sample_on_ring(thunt::gen::Rng& rng, const Polygon& ring) {
  std::vector<double> lengths;
  double total = 0.0;
  for (std::size_t e = 0; e < ring.size(); ++e) {
    lengths.push_back(thunt::geom::distance(ring.vertex(e), ring.vertex(e + 1)));
    total += lengths.back();
  }
  double s = rng.uniform(0.0, total);
  for (std::size_t e = 0; e < ring.size(); ++e) {
    if (s <= lengths[e] || e + 1 == ring.size()) {
      return thunt::geom::lerp(ring.vertex(e), ring.vertex(e + 1), std::min(1.0, s / lengths[e]));
    }
    s -= lengths[e];
  }
  return ring.vertex(0);
}

/// Codeword built by string concatenation straight from the layout rules.
inline std::string reference_code(long long a1, long long a2, long long a3) {
  const auto beta = [](long long v) {
    unsigned long long m = static_cast<unsigned long long>(v < 0 ? -v : v);
    std::string bin;
    while (m) {
      bin.insert(bin.begin(), (m & 1) ? '1' : '0');
      m >>= 1;
    }
    std::string out;
    for (char c : bin) out += c == '1' ? "10" : "01";
    return out;
  };
  return std::string(a2 > 0 ? "1" : "0") + (a3 > 0 ? "1" : "0") + beta(a1) + "000" + beta(a2) +
         "000" + beta(a3);
}

/// Smallest enclosing circle by trying every pair and triple of vertices.
inline double brute_enclosing_radius(const std::vector<Point>& pts) {
  const auto covers = [&](Point c, double r) {
    for (Point p : pts) {
      if (thunt::geom::distance(c, p) > r * (1 + 1e-12) + 1e-12) return false;
    }
    return true;
  };
  double best = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Point c = (pts[i] + pts[j]) * 0.5;
      const double r = thunt::geom::distance(c, pts[i]);
      if (r < best && covers(c, r)) best = r;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const Point a = pts[i], b = pts[j], d = pts[k];
        const double den = 2.0 * (a.x * (b.y - d.y) + b.x * (d.y - a.y) + d.x * (a.y - b.y));
        if (std::abs(den) < 1e-15) continue;
        const double a2 = a.x * a.x + a.y * a.y, b2 = b.x * b.x + b.y * b.y,
                     d2 = d.x * d.x + d.y * d.y;
        const Point cc{(a2 * (b.y - d.y) + b2 * (d.y - a.y) + d2 * (a.y - b.y)) / den,
                       (a2 * (d.x - b.x) + b2 * (a.x - d.x) + d2 * (b.x - a.x)) / den};
        const double rr = thunt::geom::distance(cc, a);
        if (rr < best && covers(cc, rr)) best = rr;
      }
    }
  }
  return best;
}

/// Largest distance to the boundary over a grid of points inside a convex
/// polygon; a lower bound on the inradius.
inline double grid_inradius(const Polygon& poly, int steps) {
  const auto& b = poly.bounds();
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const Point p{b.lo.x + (b.hi.x - b.lo.x) * i / steps, b.lo.y + (b.hi.y - b.lo.y) * j / steps};
      if (thunt::geom::point_in_polygon(p, poly) != thunt::geom::Location::Interior) continue;
      double d = INFINITY;
      for (std::size_t e = 0; e < poly.size(); ++e) {
        d = std::min(d, thunt::geom::point_segment_distance(p, poly.vertex(e), poly.vertex(e + 1)));
      }
      best = std::max(best, d);
    }
  }
  return best;
}

// Cells of a uniform grid whose centres are interior to the polygon, with
// 4-neighbour flood fill.
class CellGrid {
 public:
  CellGrid(const Polygon& poly, double cell) : cell_(cell), lo_(poly.bounds().lo) {
    nx_ = static_cast<int>(std::ceil((poly.bounds().hi.x - lo_.x) / cell));
    ny_ = static_cast<int>(std::ceil((poly.bounds().hi.y - lo_.y) / cell));
    free_.assign(static_cast<std::size_t>(nx_ * ny_), false);
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) {
        free_[idx(i, j)] = thunt::geom::point_in_polygon(center(i, j), poly) == thunt::geom::Location::Interior;
      }
    }
  }

  Point center(int i, int j) const { return {lo_.x + (i + 0.5) * cell_, lo_.y + (j + 0.5) * cell_}; }
  std::pair<int, int> cell_of(Point p) const {
    return {static_cast<int>((p.x - lo_.x) / cell_), static_cast<int>((p.y - lo_.y) / cell_)};
  }
  void block_if(const std::function<bool(Point)>& pred) {
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) {
        if (pred(center(i, j))) free_[idx(i, j)] = false;
      }
    }
  }
  bool connected(Point a, Point b) const {
    const auto [ai, aj] = cell_of(a);
    const auto [bi, bj] = cell_of(b);
    std::vector<bool> seen(free_.size(), false);
    std::queue<std::pair<int, int>> todo;
    if (!free_[idx(ai, aj)]) return false;
    todo.push({ai, aj});
    seen[idx(ai, aj)] = true;
    while (!todo.empty()) {
      const auto [i, j] = todo.front();
      todo.pop();
      if (i == bi && j == bj) return true;
      for (const auto& [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const int u = i + di, v = j + dj;
        if (u < 0 || v < 0 || u >= nx_ || v >= ny_ || !free_[idx(u, v)] || seen[idx(u, v)]) continue;
        seen[idx(u, v)] = true;
        todo.push({u, v});
      }
    }
    return false;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j * nx_ + i); }
  double cell_;
  Point lo_;
  int nx_ = 0, ny_ = 0;
  std::vector<bool> free_;
};


}  // namespace support
