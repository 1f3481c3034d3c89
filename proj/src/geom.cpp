#include "thunt/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace thunt::geom {

namespace {

// Relative threshold below which two directions are treated as parallel.
constexpr double kParallel = 1e-14;

double point_line_distance(Point p, Point a, Point b) {
  return std::abs(cross(b - a, p - a)) / norm(b - a);
}

// Parameters in [0, 1] along a->b at which the segment meets the ring.
void ring_contacts(Point a, Point b, const Polygon& ring, std::vector<double>& out) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  const std::size_t n = ring.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Point c = ring.edge_start(e);
    const Point f = ring.edge_end(e) - c;
    const double denom = cross(d, f);
    if (std::abs(denom) > kParallel * std::sqrt(len2 * dot(f, f))) {
      const Point w = c - a;
      const double t = cross(w, f) / denom;
      const double u = cross(w, d) / denom;
      if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) out.push_back(t);
    }
  }
  for (const Point& v : ring.vertices()) {
    if (point_segment_distance(v, a, b) <= kEps) {
      out.push_back(std::clamp(dot(v - a, d) / len2, 0.0, 1.0));
    }
  }
}

// Start parameter of the first piece of a->b that leaves the region allowed
// by this ring: the closed polygon for the outer ring, the complement of the
// open interior for an obstacle.
std::optional<double> first_violation(Point a, Point b, const Polygon& ring, bool outer) {
  const auto bad = [&](Point p) {
    const Location loc = point_in_polygon(p, ring);
    return outer ? loc == Location::Exterior : loc == Location::Interior;
  };
  if (distance(a, b) <= 0.0) {
    if (bad(a)) return 0.0;
    return std::nullopt;
  }
  std::vector<double> params{0.0, 1.0};
  ring_contacts(a, b, ring, params);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  for (std::size_t k = 0; k + 1 < params.size(); ++k) {
    if (bad(lerp(a, b, 0.5 * (params[k] + params[k + 1])))) return params[k];
  }
  return std::nullopt;
}

Box segment_box(Point a, Point b) {
  return {{std::min(a.x, b.x), std::min(a.y, b.y)}, {std::max(a.x, b.x), std::max(a.y, b.y)}};
}

std::string obstacle_name(std::size_t i) { return "obstacle " + std::to_string(i); }

}  // namespace

double point_segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + d * t);
}

double segment_segment_distance(Point a, Point b, Point c, Point d) {
  const double o1 = cross(b - a, c - a);
  const double o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c);
  const double o4 = cross(d - c, b - c);
  if (((o1 < 0 && o2 > 0) || (o1 > 0 && o2 < 0)) && ((o3 < 0 && o4 > 0) || (o3 > 0 && o4 < 0))) {
    return 0.0;
  }
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double polyline_length(std::span<const Point> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

// ---------------------------------------------------------------------------
// Polygon

Polygon::Polygon(std::vector<Point> input) {
  for (const Point& p : input) {
    if (!is_finite(p)) throw GeometryError("polygon vertex is not finite");
  }
  std::vector<Point> v;
  v.reserve(input.size());
  for (const Point& p : input) {
    if (v.empty() || distance(v.back(), p) > kEps) v.push_back(p);
  }
  while (v.size() > 1 && distance(v.front(), v.back()) <= kEps) v.pop_back();

  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point prev = v[(i + n - 1) % n];
      const Point cur = v[i];
      const Point next = v[(i + 1) % n];
      if (distance(prev, next) <= kEps) throw GeometryError("polygon doubles back on itself");
      if (point_line_distance(cur, prev, next) <= kEps) {
        if (dot(cur - prev, next - cur) < 0.0) {
          throw GeometryError("polygon doubles back on itself");
        }
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) throw GeometryError("polygon needs at least 3 distinct vertices");

  double twice_area = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) twice_area += cross(v[i], v[(i + 1) % v.size()]);
  if (std::abs(twice_area) <= kEps) throw GeometryError("polygon has zero area");
  if (twice_area < 0.0) std::reverse(v.begin(), v.end());
  area_ = 0.5 * std::abs(twice_area);
  vertices_ = std::move(v);

  const std::size_t n = vertices_.size();
  arc_.assign(n + 1, 0.0);
  box_ = {vertices_[0], vertices_[0]};
  for (std::size_t i = 0; i < n; ++i) {
    arc_[i + 1] = arc_[i] + distance(vertices_[i], vertices_[(i + 1) % n]);
    box_.lo = {std::min(box_.lo.x, vertices_[i].x), std::min(box_.lo.y, vertices_[i].y)};
    box_.hi = {std::max(box_.hi.x, vertices_[i].x), std::max(box_.hi.y, vertices_[i].y)};
  }

  // Non-adjacent edges must keep apart.
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertex(i), b = vertex(i + 1);
    const Box bi = segment_box(a, b);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Point c = vertex(j), d = vertex(j + 1);
      if (!bi.overlaps(segment_box(c, d))) continue;
      if (segment_segment_distance(a, b, c, d) <= kEps) {
        throw GeometryError("polygon is not simple: edges " + std::to_string(i) + " and " +
                            std::to_string(j) + " meet");
      }
    }
  }

  convex_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertex(i + 1) - vertex(i), vertex(i + 2) - vertex(i + 1)) <= 0.0) {
      convex_ = false;
      break;
    }
  }
}

std::pair<std::size_t, double> Polygon::nearest_edge(Point p) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < vertices_.size(); ++e) {
    const double d = point_segment_distance(p, edge_start(e), edge_end(e));
    if (d < best_d) {
      best_d = d;
      best = e;
    }
  }
  return {best, best_d};
}

double Polygon::arc_position(Point p) const {
  const auto [e, d] = nearest_edge(p);
  if (d > kEps) throw GeometryError("point is not on the ring");
  const Point a = edge_start(e);
  const Point ab = edge_end(e) - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  double s = arc_[e] + t * edge_length(e);
  if (s >= perimeter()) s -= perimeter();
  return s;
}

Point Polygon::point_at(double arc) const {
  const double perim = perimeter();
  arc = std::fmod(arc, perim);
  if (arc < 0.0) arc += perim;
  const auto it = std::upper_bound(arc_.begin(), arc_.end(), arc);
  std::size_t e = static_cast<std::size_t>(std::distance(arc_.begin(), it));
  e = e == 0 ? 0 : e - 1;
  if (e >= vertices_.size()) e = vertices_.size() - 1;
  const double len = edge_length(e);
  const double t = len > 0.0 ? (arc - arc_[e]) / len : 0.0;
  return lerp(edge_start(e), edge_end(e), std::clamp(t, 0.0, 1.0));
}

Location point_in_polygon(Point p, const Polygon& poly) {
  if (!poly.bounds().contains(p)) return Location::Exterior;
  const auto v = poly.vertices();
  const std::size_t n = v.size();
  for (std::size_t e = 0; e < n; ++e) {
    if (point_segment_distance(p, v[e], v[(e + 1) % n]) <= kEps) return Location::OnBoundary;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Location::Interior : Location::Exterior;
}

// ---------------------------------------------------------------------------
// Terrain

Terrain::Terrain(Polygon outer, std::vector<Polygon> obstacles)
    : outer_(std::move(outer)), obstacles_(std::move(obstacles)) {
  const std::size_t no = outer_.size();
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    const Polygon& ob = obstacles_[i];
    for (const Point& v : ob.vertices()) {
      if (point_in_polygon(v, outer_) != Location::Interior) {
        throw GeometryError(obstacle_name(i) + " is not strictly inside the outer polygon");
      }
    }
    for (std::size_t e = 0; e < ob.size(); ++e) {
      for (std::size_t f = 0; f < no; ++f) {
        if (segment_segment_distance(ob.edge_start(e), ob.edge_end(e), outer_.edge_start(f),
                                     outer_.edge_end(f)) <= kEps) {
          throw GeometryError(obstacle_name(i) + " is not strictly inside the outer polygon");
        }
      }
    }
  }
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    for (std::size_t j = i + 1; j < obstacles_.size(); ++j) {
      const Polygon& a = obstacles_[i];
      const Polygon& b = obstacles_[j];
      if (!a.bounds().overlaps(b.bounds())) continue;
      const std::string msg =
          "obstacles " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint";
      for (std::size_t e = 0; e < a.size(); ++e) {
        for (std::size_t f = 0; f < b.size(); ++f) {
          if (segment_segment_distance(a.edge_start(e), a.edge_end(e), b.edge_start(f),
                                       b.edge_end(f)) <= kEps) {
            throw GeometryError(msg);
          }
        }
      }
      if (point_in_polygon(a.vertex(0), b) != Location::Exterior ||
          point_in_polygon(b.vertex(0), a) != Location::Exterior) {
        throw GeometryError(msg);
      }
    }
  }
}

const Polygon& Terrain::ring(RingId id) const {
  if (id == kOuterRing) return outer_;
  if (id < 0 || static_cast<std::size_t>(id) >= obstacles_.size()) {
    throw GeometryError("unknown ring id " + std::to_string(id));
  }
  return obstacles_[static_cast<std::size_t>(id)];
}

std::size_t Terrain::vertex_count() const {
  std::size_t n = outer_.size();
  for (const Polygon& ob : obstacles_) n += ob.size();
  return n;
}

bool point_in_terrain(Point p, const Terrain& t) {
  if (point_in_polygon(p, t.outer()) == Location::Exterior) return false;
  for (const Polygon& ob : t.obstacles()) {
    if (ob.bounds().contains(p) && point_in_polygon(p, ob) == Location::Interior) return false;
  }
  return true;
}

bool segment_in_terrain(Point a, Point b, const Terrain& t) {
  if (t.outer().is_convex()) {
    if (point_in_polygon(a, t.outer()) == Location::Exterior ||
        point_in_polygon(b, t.outer()) == Location::Exterior) {
      return false;
    }
  } else if (first_violation(a, b, t.outer(), true)) {
    return false;
  }
  const Box box = segment_box(a, b);
  for (const Polygon& ob : t.obstacles()) {
    if (!ob.bounds().overlaps(box)) continue;
    if (first_violation(a, b, ob, false)) return false;
  }
  return true;
}

bool sees(Point p, Point q, const Terrain& t) {
  if (!point_in_terrain(p, t) || !point_in_terrain(q, t)) {
    throw GeometryError("visibility query with a point outside the terrain");
  }
  if (distance(p, q) > 1.0 + kEps) return false;
  return segment_in_terrain(p, q, t);
}

std::optional<HitEvent> first_hit(Point from, Point toward, const Terrain& t) {
  if (!point_in_terrain(from, t)) throw GeometryError("move starts outside the terrain");
  const double len = distance(from, toward);
  if (len <= kEps) throw GeometryError("move has no direction");

  std::optional<double> best;
  RingId ring = kOuterRing;
  if (auto v = first_violation(from, toward, t.outer(), true)) best = v;
  const Box box = segment_box(from, toward);
  for (std::size_t i = 0; i < t.obstacles().size(); ++i) {
    const Polygon& ob = t.obstacles()[i];
    if (!ob.bounds().overlaps(box)) continue;
    if (auto v = first_violation(from, toward, ob, false); v && (!best || *v < *best)) {
      best = v;
      ring = static_cast<RingId>(i);
    }
  }
  if (!best) return std::nullopt;
  return HitEvent{lerp(from, toward, *best), ring, *best * len};
}

std::vector<LineHit> line_ring_intersections(Point a, Point b, const Polygon& ring) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 <= kEps * kEps) throw GeometryError("line needs two distinct points");

  double tlo = std::numeric_limits<double>::infinity();
  double thi = -tlo;
  for (const Point& v : ring.vertices()) {
    const double t = dot(v - a, d) / len2;
    tlo = std::min(tlo, t);
    thi = std::max(thi, t);
  }
  tlo -= 1.0;
  thi += 1.0;
  const Point from = a + d * tlo;
  const Point to = a + d * thi;

  std::vector<double> contacts;
  ring_contacts(from, to, ring, contacts);
  std::vector<double> params;
  params.reserve(contacts.size());
  for (double s : contacts) params.push_back(tlo + s * (thi - tlo));
  std::sort(params.begin(), params.end());

  const double merge = kEps / std::sqrt(len2);
  std::vector<double> merged;
  for (double t : params) {
    if (merged.empty() || t - merged.back() > merge) merged.push_back(t);
  }

  const auto inside = [&](double t0, double t1) {
    return point_in_polygon(a + d * (0.5 * (t0 + t1)), ring) == Location::Interior;
  };
  std::vector<LineHit> hits;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const double before = k == 0 ? tlo : merged[k - 1];
    const double after = k + 1 == merged.size() ? thi : merged[k + 1];
    const bool crossing = inside(before, merged[k]) != inside(merged[k], after);
    hits.push_back({a + d * merged[k], merged[k], crossing});
  }
  return hits;
}

// ---------------------------------------------------------------------------
// Boundary traversal

BoundaryCursor::BoundaryCursor(const Polygon& ring, std::size_t edge, double param, Sense sense)
    : ring_(&ring), edge_(edge % ring.size()), param_(std::clamp(param, 0.0, 1.0)), sense_(sense) {}

BoundaryCursor::BoundaryCursor(const Polygon& ring, Point on_ring, Sense sense)
    : ring_(&ring), edge_(0), param_(0.0), sense_(sense) {
  const auto [e, d] = ring.nearest_edge(on_ring);
  if (d > kEps) throw GeometryError("cursor point is not on the ring");
  const Point a = ring.edge_start(e);
  const Point ab = ring.edge_end(e) - a;
  edge_ = e;
  param_ = std::clamp(dot(on_ring - a, ab) / dot(ab, ab), 0.0, 1.0);
}

Point BoundaryCursor::point() const {
  return lerp(ring_->edge_start(edge_), ring_->edge_end(edge_), param_);
}

double BoundaryCursor::arc() const {
  double s = ring_->arc_at_vertex(edge_) + param_ * ring_->edge_length(edge_);
  if (s >= ring_->perimeter()) s -= ring_->perimeter();
  return s;
}

BoundaryWalk walk_boundary(const BoundaryCursor& cursor, double distance_to_walk,
                           std::optional<Point> stop) {
  if (!(distance_to_walk >= 0.0)) throw GeometryError("walk distance must be non-negative");
  const Polygon& ring = cursor.ring();
  const double perim = ring.perimeter();
  const Sense sense = cursor.sense();

  double walk = distance_to_walk;
  bool reached = false;
  if (stop) {
    const double target = ring.arc_position(*stop);
    const double s0 = cursor.arc();
    double ahead = std::fmod(sense == Sense::Ccw ? target - s0 : s0 - target, perim);
    if (ahead < 0.0) ahead += perim;
    if (perim - ahead <= kEps) ahead = 0.0;
    if (ahead <= distance_to_walk + kEps) {
      walk = ahead;
      reached = true;
    }
  }

  std::vector<Point> path{cursor.point()};
  const auto push = [&path](Point p) {
    if (!(p == path.back())) path.push_back(p);
  };
  const std::size_t n = ring.size();
  std::size_t e = cursor.edge();
  double t = cursor.param();
  double remaining = walk;
  while (remaining > 0.0) {
    const double len = ring.edge_length(e);
    if (sense == Sense::Ccw) {
      const double avail = (1.0 - t) * len;
      if (remaining < avail) {
        t += remaining / len;
        remaining = 0.0;
        push(lerp(ring.edge_start(e), ring.edge_end(e), t));
      } else {
        remaining -= avail;
        e = (e + 1) % n;
        t = 0.0;
        push(ring.vertex(e));
      }
    } else {
      const double avail = t * len;
      if (remaining < avail) {
        t -= remaining / len;
        remaining = 0.0;
        push(lerp(ring.edge_start(e), ring.edge_end(e), t));
      } else {
        remaining -= avail;
        push(ring.vertex(e));
        e = (e + n - 1) % n;
        t = 1.0;
      }
    }
  }

  if (reached) {
    BoundaryCursor end(ring, *stop, sense);
    if (path.size() == 1) {
      path.front() = *stop;
    } else {
      path.back() = *stop;
    }
    return {end, std::move(path), walk, true};
  }
  return {BoundaryCursor(ring, e, t, sense), std::move(path), walk, false};
}

std::pair<double, double> perimeter_split(const Polygon& ring, Point a, Point b) {
  const double perim = ring.perimeter();
  double d = std::fmod(ring.arc_position(b) - ring.arc_position(a), perim);
  if (d < 0.0) d += perim;
  if (perim - d <= kEps) d = 0.0;
  return {d, perim - d};
}

double distance_to_boundary(Point p, const Terrain& t) {
  if (!point_in_terrain(p, t)) throw GeometryError("point is outside the terrain");
  double best = t.outer().nearest_edge(p).second;
  for (const Polygon& ob : t.obstacles()) best = std::min(best, ob.nearest_edge(p).second);
  return best;
}

// ---------------------------------------------------------------------------
// Fatness

namespace {

bool in_circle(const Circle& c, Point p) {
  return distance(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-15;
}

Circle circle_from(Point a, Point b) { return {lerp(a, b, 0.5), 0.5 * distance(a, b)}; }

Circle circle_from(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double den = 2.0 * cross(ab, ac);
  if (std::abs(den) <= 1e-12 * std::sqrt(dot(ab, ab) * dot(ac, ac))) {
    // Collinear: the widest pair decides.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point off{(ac.y * ab2 - ab.y * ac2) / den, (ab.x * ac2 - ac.x * ab2) / den};
  return {a + off, norm(off)};
}

}  // namespace

Circle smallest_enclosing_circle(const Polygon& poly) {
  const auto pts = poly.vertices();
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (in_circle(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (in_circle(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!in_circle(c, pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

Circle largest_inscribed_circle(const Polygon& poly) {
  if (!poly.is_convex()) throw GeometryError("largest inscribed circle needs a convex polygon");
  const std::size_t n = poly.size();
  struct HalfPlane {
    Point normal;  // inward unit normal
    double offset;
  };
  std::vector<HalfPlane> hp(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Point d = poly.edge_end(e) - poly.edge_start(e);
    const Point nrm = Point{-d.y, d.x} * (1.0 / norm(d));
    hp[e] = {nrm, dot(nrm, poly.edge_start(e))};
  }
  // Chebyshev center: maximize r subject to n_e . c - r >= offset_e. The
  // optimum sits where three constraints are tight.
  Circle best{poly.vertex(0), -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::array<const HalfPlane*, 3> rows{&hp[i], &hp[j], &hp[k]};
        const auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
          return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        std::array<std::array<double, 3>, 3> m{};
        std::array<double, 3> rhs{};
        for (int r = 0; r < 3; ++r) {
          m[r] = {rows[r]->normal.x, rows[r]->normal.y, -1.0};
          rhs[r] = rows[r]->offset;
        }
        const double det = det3(m);
        if (std::abs(det) < 1e-12) continue;
        std::array<double, 3> sol{};
        for (int col = 0; col < 3; ++col) {
          auto mc = m;
          for (int r = 0; r < 3; ++r) mc[r][col] = rhs[r];
          sol[col] = det3(mc) / det;
        }
        const Point center{sol[0], sol[1]};
        const double radius = sol[2];
        if (radius <= best.radius + 1e-12) continue;
        bool feasible = true;
        for (const HalfPlane& h : hp) {
          if (dot(h.normal, center) - h.offset < radius - kEps) {
            feasible = false;
            break;
          }
        }
        if (feasible) best = {center, radius};
      }
    }
  }
  if (best.radius <= 0.0) throw GeometryError("polygon has no inscribed circle");
  return best;
}

bool is_c_fat(const Polygon& poly, double c) {
  if (!(c > 1.0)) throw GeometryError("fatness constant must exceed 1");
  const double outer = smallest_enclosing_circle(poly).radius;
  const double inner = largest_inscribed_circle(poly).radius;
  return outer / inner <= c + kEps;
}

Validation validate_regular_terrain(const Terrain& t, double c) {
  if (!(c > 1.0)) return {false, "fatness constant must exceed 1"};
  if (!t.outer().is_convex()) return {false, "outer polygon is not convex"};
  for (std::size_t i = 0; i < t.obstacles().size(); ++i) {
    const Polygon& ob = t.obstacles()[i];
    if (!ob.is_convex()) return {false, obstacle_name(i) + " is not convex"};
    const double ratio =
        smallest_enclosing_circle(ob).radius / largest_inscribed_circle(ob).radius;
    if (ratio > c + kEps) {
      std::ostringstream os;
      os << obstacle_name(i) << " is not " << c << "-fat (R/r = " << ratio << ")";
      return {false, os.str()};
    }
  }
  return {};
}

}  // namespace thunt::geom
