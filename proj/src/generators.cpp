#include "thunt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <stdexcept>

namespace thunt::gen {

using geom::distance;

namespace {

Polygon square(Point c, double side) {
  const double h = side / 2.0;
  return Polygon({{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}});
}

// Andrew's monotone chain.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && geom::cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && geom::cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_gap(const Polygon& a, const Polygon& b) {
  if (geom::point_in_polygon(a.vertex(0), b) != geom::Location::Exterior ||
      geom::point_in_polygon(b.vertex(0), a) != geom::Location::Exterior) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < a.size(); ++e) {
    for (std::size_t f = 0; f < b.size(); ++f) {
      best = std::min(best, geom::segment_segment_distance(a.edge_start(e), a.edge_end(e),
                                                           b.edge_start(f), b.edge_end(f)));
    }
  }
  return best;
}

}  // namespace

std::vector<Polygon> gadget(const GadgetParams& params) {
  if (!(params.lambda > 0.0 && params.lambda <= 1.0)) {
    throw std::invalid_argument("gadget accessibility must lie in (0, 1]");
  }
  const double x = params.side();
  const double off = params.lambda + x / 2.0;
  const double shift = x + params.gap();
  const Point o = params.o;
  const Point centers[8] = {
      {o.x, o.y + off},          {o.x + off, o.y},          {o.x, o.y - off},
      {o.x - off, o.y},          {o.x - shift, o.y + off},  {o.x + shift, o.y + off},
      {o.x + shift, o.y - off},  {o.x - shift, o.y - off},
  };
  std::vector<Polygon> squares;
  squares.reserve(8);
  for (const Point& c : centers) squares.push_back(square(c, x));
  return squares;
}

LowerBoundTerrain regular_lb_terrain(int k, double lambda) {
  if (k < 1) throw std::invalid_argument("lower-bound terrain needs k >= 1");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("accessibility must lie in (0, 1]");
  }
  const double side = 20.0 * k * lambda;
  const double tile = 5.0 * lambda;
  const int tiles = 2 * k;  // per side of the north-east quadrant

  std::vector<Polygon> obstacles;
  std::vector<Point> candidates;
  for (int row = 1; row <= tiles; row += 2) {
    for (int col = 1; col <= tiles; col += 2) {
      const Point o{side / 2.0 + (col - 0.5) * tile, side - (row - 0.5) * tile};
      candidates.push_back(o);
      for (Polygon& sq : gadget({o, lambda})) obstacles.push_back(std::move(sq));
    }
  }
  Polygon outer({{0.0, 0.0}, {side, 0.0}, {side, side + lambda}, {0.0, side + lambda}});
  return {Terrain(std::move(outer), std::move(obstacles)), {0.0, 0.0}, side, std::move(candidates)};
}

double CombParams::width() const { return x > 0.0 ? x : std::ldexp(1.0, -A); }

std::int64_t CombParams::corridors() const {
  const double k = static_cast<double>(A) / (2.0 * width());
  const double rounded = std::round(k);
  if (std::abs(k - rounded) > 1e-9 * std::max(1.0, k)) {
    throw std::invalid_argument("A / (2x) must be an integer");
  }
  return static_cast<std::int64_t>(rounded);
}

Scenario comb_terrain(const CombParams& params) {
  if (params.A <= 8) throw std::invalid_argument("comb terrain needs A > 8");
  const std::int64_t k = params.corridors();
  if (params.i < 1 || params.i > k) throw std::invalid_argument("open corridor index out of range");
  const double a = params.A;
  const double w = params.width();
  const double floor_y = a / 4.0;       // corridors start here
  const double mid_y = a / 2.0;         // upper chamber starts here
  const double cap_y = a / 2.0 - w;     // closed corridors end here

  std::vector<Point> v{{0.0, 0.0}, {a, 0.0}, {a, floor_y}};
  for (std::int64_t j = k; j >= 1; --j) {
    const double xl = static_cast<double>(2 * j - 2) * w;
    const double xr = static_cast<double>(2 * j - 1) * w;
    v.push_back({xr, floor_y});
    if (j == params.i) {
      v.insert(v.end(), {{xr, mid_y}, {a, mid_y}, {a, a}, {0.0, a}, {0.0, mid_y}, {xl, mid_y}});
    } else {
      v.insert(v.end(), {{xr, cap_y}, {xl, cap_y}});
    }
    v.push_back({xl, floor_y});
  }
  return {Terrain(Polygon(std::move(v)), {}), {0.0, 0.0}, {a / 2.0, a - 1.0}};
}

Polygon random_convex_polygon(Rng& rng, Point center, double radius, int n,
                              double min_radius_fraction) {
  if (n < 3) throw std::invalid_argument("convex polygon needs at least 3 vertices");
  const double step = 2.0 * std::numbers::pi / n;
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double angle = phase + step * (j + rng.uniform(-0.35, 0.35));
    const double r = radius * rng.uniform(min_radius_fraction, 1.0);
    pts.push_back({center.x + r * std::cos(angle), center.y + r * std::sin(angle)});
  }
  return Polygon(convex_hull(std::move(pts)));
}

Polygon random_fat_polygon(Rng& rng, Point center, double radius, double c) {
  if (!(c > 1.0)) throw std::invalid_argument("fatness constant must exceed 1");
  const double min_fraction = std::clamp(1.0 - 0.25 * (c - 1.0), 0.5, 0.9);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int n = static_cast<int>(rng.integer(3, 12));
    try {
      Polygon poly = random_convex_polygon(rng, center, radius, n, min_fraction);
      if (poly.is_convex() && geom::is_c_fat(poly, c)) return poly;
    } catch (const geom::GeometryError&) {
      // degenerate hull; draw again
    }
  }
  throw std::runtime_error("could not sample a c-fat polygon");
}

Scenario random_regular_terrain(const RandomTerrainParams& params) {
  if (!(params.c > 1.0)) throw std::invalid_argument("fatness constant must exceed 1");
  if (!(params.extent > 0.0)) throw std::invalid_argument("extent must be positive");
  if (params.obstacles < 0) throw std::invalid_argument("obstacle count must be non-negative");
  constexpr double kClearance = 0.1;
  constexpr int kTries = 2000;

  Rng rng(params.seed);
  const Polygon outer =
      random_convex_polygon(rng, {0.0, 0.0}, params.extent / 2.0, 16, 0.85);
  const geom::Box box = outer.bounds();
  const auto sample_point = [&] {
    return Point{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
  };

  std::vector<Polygon> obstacles;
  for (int n = 0; n < params.obstacles; ++n) {
    bool placed = false;
    for (int attempt = 0; attempt < kTries && !placed; ++attempt) {
      const double radius = rng.uniform(0.3, std::max(0.35, 0.1 * params.extent));
      const Point center = sample_point();
      Polygon cand = random_fat_polygon(rng, center, radius, params.c);
      bool ok = true;
      for (const Point& v : cand.vertices()) {
        if (geom::point_in_polygon(v, outer) != geom::Location::Interior ||
            outer.nearest_edge(v).second < kClearance) {
          ok = false;
          break;
        }
      }
      for (std::size_t j = 0; ok && j < obstacles.size(); ++j) {
        if (polygon_gap(cand, obstacles[j]) < kClearance) ok = false;
      }
      if (ok) {
        obstacles.push_back(std::move(cand));
        placed = true;
      }
    }
    if (!placed) throw std::runtime_error("obstacle placement failed: parameters too dense");
  }
  Terrain terrain(outer, std::move(obstacles));

  const auto sample_free = [&](double clearance, const std::optional<Point>& away_from) {
    for (int attempt = 0; attempt < 100 * kTries; ++attempt) {
      const Point p = sample_point();
      if (!geom::point_in_terrain(p, terrain)) continue;
      if (geom::distance_to_boundary(p, terrain) < clearance) continue;
      if (away_from && distance(p, *away_from) < 1.0) continue;
      return p;
    }
    throw std::runtime_error("could not place start/treasure: parameters too dense");
  };
  const Point start = sample_free(1e-3, std::nullopt);
  const Point treasure = sample_free(0.05, start);
  return {std::move(terrain), start, treasure};
}

}  // namespace thunt::gen
