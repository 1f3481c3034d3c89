#include "thunt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace thunt::oracle {

using geom::distance;
using geom::GeometryError;

Tiling::Tiling(Point anchor, std::int64_t a1) : anchor_(anchor), a1_(a1) {
  if (a1 <= 0) throw std::invalid_argument("tiling needs a positive a1");
}

Point Tiling::tile_min(TileIndex idx) const {
  if (idx.col == 0 || idx.row == 0) throw std::invalid_argument("tile indices are nonzero");
  const double a1 = static_cast<double>(a1_);
  return {anchor_.x + static_cast<double>(offset_of(idx.col)) / a1,
          anchor_.y + static_cast<double>(offset_of(idx.row)) / a1};
}

Point Tiling::tile_center(TileIndex idx) const {
  const double a1 = static_cast<double>(a1_);
  return {anchor_.x + (static_cast<double>(offset_of(idx.col)) + 0.5) / a1,
          anchor_.y + (static_cast<double>(offset_of(idx.row)) + 0.5) / a1};
}

TreasureSpec accessibility(const Terrain& t, Point q) {
  if (!geom::point_in_terrain(q, t)) throw GeometryError("treasure is outside the terrain");
  const double rho = geom::distance_to_boundary(q, t);
  if (rho <= geom::kEps) throw GeometryError("treasure must be an interior point of the terrain");
  return {q, rho, std::min(1.0, rho)};
}

TileChoice select_tile(const Terrain& t, Point p, const TreasureSpec& spec) {
  (void)t;
  if (!(spec.lambda > 0.0)) throw std::invalid_argument("accessibility must be positive");
  const double radius = spec.lambda * kLambdaShrink;
  const auto a1 = static_cast<std::int64_t>(std::ceil(2.0 / spec.lambda));
  const double a1d = static_cast<double>(a1);
  const Point q = spec.q;

  const auto lo = [&](double c, double anchor) {
    return static_cast<std::int64_t>(std::floor((c - radius - anchor) * a1d)) - 1;
  };
  const auto hi = [&](double c, double anchor) {
    return static_cast<std::int64_t>(std::ceil((c + radius - anchor) * a1d)) + 1;
  };
  const auto corner_ok = [&](double x, double y) { return std::hypot(x - q.x, y - q.y) <= radius; };

  // Rows south to north, columns west to east; signed indices are monotone
  // in the offsets, so the first contained tile is the one advised.
  for (std::int64_t ky = lo(q.y, p.y); ky <= hi(q.y, p.y); ++ky) {
    const double y0 = p.y + static_cast<double>(ky) / a1d;
    const double y1 = p.y + static_cast<double>(ky + 1) / a1d;
    for (std::int64_t kx = lo(q.x, p.x); kx <= hi(q.x, p.x); ++kx) {
      const double x0 = p.x + static_cast<double>(kx) / a1d;
      const double x1 = p.x + static_cast<double>(kx + 1) / a1d;
      if (corner_ok(x0, y0) && corner_ok(x1, y0) && corner_ok(x0, y1) && corner_ok(x1, y1)) {
        const TileIndex idx{Tiling::signed_index(kx), Tiling::signed_index(ky)};
        return {a1, idx, Tiling(p, a1).tile_center(idx)};
      }
    }
  }
  throw std::logic_error("no tile fits inside the treasure disc");
}

AdvicePlan plan_advice(const Terrain& t, Point p, Point q) {
  if (!geom::point_in_terrain(p, t)) throw GeometryError("start is outside the terrain");
  AdvicePlan plan;
  plan.spec = accessibility(t, q);
  plan.tile = select_tile(t, p, plan.spec);
  plan.triple = {plan.tile.a1, plan.tile.idx.col, plan.tile.idx.row};
  plan.advice = codec::encode(plan.triple);
  return plan;
}

codec::AdviceString make_advice(const Terrain& t, Point p, Point q) {
  return plan_advice(t, p, q).advice;
}

PathResult shortest_path(const Terrain& t, Point p, Point q) {
  if (!geom::point_in_terrain(p, t) || !geom::point_in_terrain(q, t)) {
    throw GeometryError("shortest path endpoints must lie in the terrain");
  }
  if (geom::segment_in_terrain(p, q, t)) return {distance(p, q), {p, q}};

  std::vector<Point> nodes{p, q};
  for (const Point& v : t.outer().vertices()) nodes.push_back(v);
  for (const auto& ob : t.obstacles()) {
    for (const Point& v : ob.vertices()) nodes.push_back(v);
  }

  // Dense Dijkstra; edges are tested lazily when their tail is settled.
  const std::size_t n = nodes.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> parent(n, n);
  std::vector<char> done(n, 0);
  dist[0] = 0.0;
  for (;;) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && dist[i] < kInf && (u == n || dist[i] < dist[u])) u = i;
    }
    if (u == n || u == 1) break;
    done[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = distance(nodes[u], nodes[v]);
      if (dist[u] + w >= dist[v]) continue;
      if (!geom::segment_in_terrain(nodes[u], nodes[v], t)) continue;
      dist[v] = dist[u] + w;
      parent[v] = u;
    }
  }
  if (!(dist[1] < kInf)) throw GeometryError("start and treasure are not connected");

  std::vector<Point> path;
  for (std::size_t v = 1; v != n; v = parent[v]) {
    path.push_back(nodes[v]);
    if (v == 0) break;
  }
  std::reverse(path.begin(), path.end());
  return {dist[1], std::move(path)};
}

double grid_path_oracle(const Terrain& t, Point p, Point q, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
  if (!geom::point_in_terrain(p, t) || !geom::point_in_terrain(q, t)) {
    throw GeometryError("grid oracle endpoints must lie in the terrain");
  }
  if (distance(p, q) <= geom::kEps) return 0.0;

  const geom::Box box = t.outer().bounds();
  const auto ilo = static_cast<std::int64_t>(std::floor((box.lo.x - p.x) / resolution));
  const auto ihi = static_cast<std::int64_t>(std::ceil((box.hi.x - p.x) / resolution));
  const auto jlo = static_cast<std::int64_t>(std::floor((box.lo.y - p.y) / resolution));
  const auto jhi = static_cast<std::int64_t>(std::ceil((box.hi.y - p.y) / resolution));
  const auto nx = static_cast<std::size_t>(ihi - ilo + 1);
  const auto ny = static_cast<std::size_t>(jhi - jlo + 1);
  const std::size_t count = nx * ny;
  const std::size_t target = count;

  const auto node_point = [&](std::size_t id) {
    const auto i = static_cast<std::int64_t>(id % nx) + ilo;
    const auto j = static_cast<std::int64_t>(id / nx) + jlo;
    return Point{p.x + static_cast<double>(i) * resolution, p.y + static_cast<double>(j) * resolution};
  };
  std::vector<char> inside(count, 0);
  for (std::size_t id = 0; id < count; ++id) inside[id] = geom::point_in_terrain(node_point(id), t);

  const std::size_t start = static_cast<std::size_t>(-jlo) * nx + static_cast<std::size_t>(-ilo);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(count + 1, kInf);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[start] = 0.0;
  open.push({0.0, start});

  const double diag = resolution * std::sqrt(2.0);
  const double attach = 2.0 * resolution + geom::kEps;
  constexpr int kDi[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  constexpr int kDj[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u]) continue;
    if (u == target) return d;
    const Point pu = node_point(u);
    const auto i = static_cast<std::int64_t>(u % nx);
    const auto j = static_cast<std::int64_t>(u / nx);
    for (int k = 0; k < 8; ++k) {
      const std::int64_t ni = i + kDi[k];
      const std::int64_t nj = j + kDj[k];
      if (ni < 0 || nj < 0 || ni >= static_cast<std::int64_t>(nx) ||
          nj >= static_cast<std::int64_t>(ny)) {
        continue;
      }
      const std::size_t v = static_cast<std::size_t>(nj) * nx + static_cast<std::size_t>(ni);
      if (!inside[v]) continue;
      const double nd = d + ((k % 2 == 0) ? resolution : diag);
      if (nd >= dist[v]) continue;
      if (!geom::segment_in_terrain(pu, node_point(v), t)) continue;
      dist[v] = nd;
      open.push({nd, v});
    }
    const double to_q = distance(pu, q);
    if (to_q <= attach && d + to_q < dist[target] && geom::segment_in_terrain(pu, q, t)) {
      dist[target] = d + to_q;
      open.push({dist[target], target});
    }
  }
  throw std::runtime_error("grid resolution too coarse: lattice does not connect start to treasure");
}

}  // namespace thunt::oracle
