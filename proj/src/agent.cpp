#include "thunt/agent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thunt::agent {

using geom::distance;
using geom::kEps;
using geom::Polygon;

void Trajectory::append(std::vector<Point> points, Provenance provenance) {
  if (points.size() < 2) return;
  if (distance(points.front(), end()) > kEps) {
    throw NavigationError("trajectory pieces must share endpoints");
  }
  points.front() = end();
  const double len = geom::polyline_length(points);
  if (len <= 0.0) return;
  length_ += len;
  pieces_.push_back({std::move(points), provenance, len});
}

Directions choose_directions(const Polygon& ring, Point r, Point north) {
  const auto [edge, off] = ring.nearest_edge(r);
  if (off > kEps) throw geom::GeometryError("direction query point is not on the ring");
  north = north * (1.0 / geom::norm(north));

  const auto pick = [](Sense s) { return Directions{s, geom::opposite(s)}; };
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (distance(r, ring.vertex(i)) > kEps) continue;
    const Point v = ring.vertex(i);
    const Point ccw = ring.vertex(i + 1) - v;
    const Point cw = ring.vertex(i + ring.size() - 1) - v;
    const auto angle = [&](Point d) {
      return std::acos(std::clamp(geom::dot(d, north) / geom::norm(d), -1.0, 1.0));
    };
    const double a_ccw = angle(ccw);
    const double a_cw = angle(cw);
    if (std::abs(a_ccw - a_cw) > 1e-12) return pick(a_ccw < a_cw ? Sense::Ccw : Sense::Cw);
    // Tie: smaller clockwise bearing from north.
    const auto bearing = [&](Point d) {
      const double b = std::atan2(geom::cross(d, north), geom::dot(d, north));
      return b < 0.0 ? b + 2.0 * std::numbers::pi : b;
    };
    return pick(bearing(ccw) <= bearing(cw) ? Sense::Ccw : Sense::Cw);
  }

  const Point along = ring.edge_end(edge) - ring.edge_start(edge);
  const double up = geom::dot(along, north);
  const Point east{north.y, -north.x};
  if (std::abs(up) <= kEps * geom::norm(along)) {
    return pick(geom::dot(along, east) < 0.0 ? Sense::Ccw : Sense::Cw);
  }
  return pick(up > 0.0 ? Sense::Ccw : Sense::Cw);
}

CowPathStats cow_path(const Terrain& t, RingId ring_id, const Line& line, Point r,
                      Trajectory& trajectory) {
  const Polygon& ring = t.ring(ring_id);
  const Point dir = line.target - line.origin;
  const double len2 = geom::dot(dir, dir);
  const double r_param = geom::dot(r - line.origin, dir) / len2;
  const double merge = kEps / std::sqrt(len2);

  std::optional<Point> r_prime;
  for (const geom::LineHit& h : geom::line_ring_intersections(line.origin, line.target, ring)) {
    if (h.crossing && h.param > r_param + merge) {
      r_prime = h.point;
      break;
    }
  }
  if (!r_prime) throw NavigationError("line does not cross the ring again after the hit point");

  const Directions dirs = choose_directions(ring, r);
  const double perimeter = ring.perimeter();
  double leg = 1.0;
  double walked = 0.0;
  Sense sense = dirs.first;
  for (;;) {
    const geom::BoundaryWalk out = geom::walk_boundary({ring, r, sense}, leg, *r_prime);
    trajectory.append(out.path, Provenance::PerimeterWalk);
    walked += out.length;
    if (out.reached) break;
    const geom::BoundaryWalk back = geom::walk_boundary(out.end.reversed(), out.length, r);
    trajectory.append(back.path, Provenance::PerimeterWalk);
    walked += back.length;
    leg *= 2.0;
    sense = geom::opposite(sense);
    if (leg > 4.0 * (perimeter + 1.0)) throw NavigationError("perimeter search did not terminate");
  }

  const auto [ccw, cw] = geom::perimeter_split(ring, r, *r_prime);
  return {ring_id, r, *r_prime, std::min(ccw, cw), walked};
}

HuntOutcome thunt(const Terrain& t, Point start, const codec::AdviceString& advice,
                  const HuntOptions& options) {
  HuntOutcome out;
  out.triple = codec::decode(advice);
  if (options.strict) {
    if (const geom::Validation v = geom::validate_regular_terrain(t, options.fatness); !v) {
      throw NavigationError("terrain is not regular: " + v.diagnostic);
    }
  }
  if (!geom::point_in_terrain(start, t)) throw NavigationError("start is outside the terrain");

  const oracle::Tiling tiling(start, out.triple.a1);
  out.qprime = tiling.tile_center({out.triple.a2, out.triple.a3});
  if (!geom::point_in_terrain(out.qprime, t)) {
    throw NavigationError("advised tile centre lies outside the terrain");
  }

  Trajectory trajectory(start);
  const Line line{start, out.qprime};
  Point pos = start;
  std::size_t hits = 0;
  while (distance(pos, out.qprime) > kEps) {
    const std::optional<geom::HitEvent> hit = geom::first_hit(pos, out.qprime, t);
    if (!hit) {
      trajectory.append({pos, out.qprime}, Provenance::FreeMove);
      pos = out.qprime;
      break;
    }
    trajectory.append({pos, hit->point}, Provenance::FreeMove);
    if (++hits > options.max_obstacle_hits) throw NavigationError("too many obstacle hits");
    const CowPathStats stats = cow_path(t, hit->ring, line, hit->point, trajectory);
    out.cow_paths.push_back(stats);
    pos = stats.r_prime;
  }
  out.reached_qprime = true;
  out.total_length = trajectory.length();

  if (options.treasure) {
    double step = 0.0;
    if (options.sample_step) {
      step = *options.sample_step;
    } else {
      step = std::min(oracle::accessibility(t, *options.treasure).lambda, 1.0) / 8.0;
    }
    out.first_sight_length = first_sight_length(t, trajectory, *options.treasure, step);
  }
  out.trajectory = std::move(trajectory);
  return out;
}

std::optional<double> first_sight_length(const Terrain& t, const Trajectory& trajectory,
                                         Point treasure, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sampling step must be positive");
  const auto visible = [&](Point x) {
    return distance(x, treasure) <= 1.0 + kEps && geom::sees(x, treasure, t);
  };
  if (visible(trajectory.start())) return 0.0;

  double arc = 0.0;
  for (const TrajectoryPiece& piece : trajectory.pieces()) {
    for (std::size_t i = 1; i < piece.points.size(); ++i) {
      const Point a = piece.points[i - 1];
      const Point b = piece.points[i];
      const double len = distance(a, b);
      if (len <= 0.0) continue;
      const auto at = [&](double s) { return geom::lerp(a, b, s / len); };
      const auto samples = static_cast<std::size_t>(std::ceil(len / step));
      double prev = 0.0;
      for (std::size_t k = 1; k <= samples; ++k) {
        const double s = k == samples ? len : static_cast<double>(k) * step;
        if (visible(at(s))) {
          double lo = prev;
          double hi = s;
          while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            (visible(at(mid)) ? hi : lo) = mid;
          }
          return arc + hi;
        }
        prev = s;
      }
      arc += len;
    }
  }
  return std::nullopt;
}

}  // namespace thunt::agent
