#pragma once

// Geometric kernel: polygons, terrains with obstacles, containment,
// bounded-range visibility, boundary traversal and fatness metrics.
//
// All predicates use a single absolute tolerance kEps. A point within kEps of
// a boundary segment is treated as lying on that boundary.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thunt::geom {

inline constexpr double kEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double point_segment_distance(Point p, Point a, Point b);
double segment_segment_distance(Point a, Point b, Point c, Point d);
double polyline_length(std::span<const Point> points);

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Location { Interior, OnBoundary, Exterior };

/// Traversal sense along a ring. Ccw follows the stored vertex order.
enum class Sense { Ccw, Cw };

constexpr Sense opposite(Sense s) { return s == Sense::Ccw ? Sense::Cw : Sense::Ccw; }

struct Box {
  Point lo;
  Point hi;

  bool overlaps(const Box& o, double pad = kEps) const {
    return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad && lo.y <= o.hi.y + pad &&
           o.lo.y <= hi.y + pad;
  }
  bool contains(Point p, double pad = kEps) const {
    return p.x >= lo.x - pad && p.x <= hi.x + pad && p.y >= lo.y - pad && p.y <= hi.y + pad;
  }
};

/// Simple polygon stored counterclockwise. Construction normalizes the ring:
/// repeated vertices and collinear interior vertices are dropped and clockwise
/// input is reversed. Throws GeometryError for degenerate or self-intersecting
/// rings.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  Point edge_start(std::size_t e) const { return vertex(e); }
  Point edge_end(std::size_t e) const { return vertex(e + 1); }
  double edge_length(std::size_t e) const { return arc_[e + 1] - arc_[e]; }

  double perimeter() const { return arc_.back(); }
  double area() const { return area_; }
  const Box& bounds() const { return box_; }
  bool is_convex() const { return convex_; }

  /// Arc length, measured counterclockwise from vertex 0, at which vertex i sits.
  double arc_at_vertex(std::size_t i) const { return arc_[i % vertices_.size()]; }

  /// Index of the edge closest to p and the distance to it.
  std::pair<std::size_t, double> nearest_edge(Point p) const;

  /// Arc position in [0, perimeter) of a point on the ring. Throws
  /// GeometryError if p is farther than kEps from the ring.
  double arc_position(Point p) const;

  Point point_at(double arc) const;

  friend bool operator==(const Polygon& a, const Polygon& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point> vertices_;
  std::vector<double> arc_;  // size n + 1; arc_[n] is the perimeter
  Box box_;
  double area_ = 0.0;
  bool convex_ = false;
};

Location point_in_polygon(Point p, const Polygon& poly);

/// Ring identifier inside a terrain: obstacle index, or kOuterRing.
using RingId = int;
inline constexpr RingId kOuterRing = -1;

/// Closed outer polygon minus the open interiors of obstacles. Construction
/// enforces that obstacles lie strictly inside the outer polygon and that
/// their closures are pairwise disjoint; connectivity of the free set follows.
class Terrain {
 public:
  Terrain(Polygon outer, std::vector<Polygon> obstacles);

  const Polygon& outer() const { return outer_; }
  std::span<const Polygon> obstacles() const { return obstacles_; }
  const Polygon& ring(RingId id) const;
  std::size_t vertex_count() const;

  friend bool operator==(const Terrain&, const Terrain&) = default;

 private:
  Polygon outer_;
  std::vector<Polygon> obstacles_;
};

bool point_in_terrain(Point p, const Terrain& t);
bool segment_in_terrain(Point a, Point b, const Terrain& t);

/// Bounded-range visibility: |pq| <= 1 and the segment stays in the terrain.
/// Throws GeometryError if either point is outside the terrain.
bool sees(Point p, Point q, const Terrain& t);

struct HitEvent {
  Point point;
  RingId ring = kOuterRing;
  double travel = 0.0;
};

/// First point along from->toward at which continuing would enter an
/// obstacle interior or leave the outer polygon. Grazing a vertex or sliding
/// along an edge is not a hit.
std::optional<HitEvent> first_hit(Point from, Point toward, const Terrain& t);

struct LineHit {
  Point point;
  double param = 0.0;  // position along the line, a at 0 and b at 1
  bool crossing = false;
};

/// Intersections of the infinite line through a and b with the ring, sorted
/// by param. A point is crossing when the line passes between the ring's
/// interior and exterior there; touches and edge overlaps are tangential.
std::vector<LineHit> line_ring_intersections(Point a, Point b, const Polygon& ring);

/// Position on a polygon boundary together with a traversal sense. Holds a
/// non-owning reference to the ring, which must outlive the cursor.
class BoundaryCursor {
 public:
  BoundaryCursor(const Polygon& ring, std::size_t edge, double param, Sense sense);
  BoundaryCursor(const Polygon& ring, Point on_ring, Sense sense);

  const Polygon& ring() const { return *ring_; }
  std::size_t edge() const { return edge_; }
  double param() const { return param_; }
  Sense sense() const { return sense_; }
  Point point() const;
  double arc() const;
  BoundaryCursor reversed() const { return {*ring_, edge_, param_, opposite(sense_)}; }

 private:
  const Polygon* ring_;
  std::size_t edge_;
  double param_;
  Sense sense_;
};

struct BoundaryWalk {
  BoundaryCursor end;
  std::vector<Point> path;
  double length = 0.0;
  bool reached = false;
};

/// Walks along the cursor's ring in its sense for `distance`, stopping early
/// the first time the walked path covers `stop`.
BoundaryWalk walk_boundary(const BoundaryCursor& cursor, double distance,
                           std::optional<Point> stop = std::nullopt);

/// Arc lengths from a to b counterclockwise and clockwise; they sum to the
/// perimeter.
std::pair<double, double> perimeter_split(const Polygon& ring, Point a, Point b);

double distance_to_boundary(Point p, const Terrain& t);

struct Circle {
  Point center;
  double radius = 0.0;
};

Circle smallest_enclosing_circle(const Polygon& poly);
Circle largest_inscribed_circle(const Polygon& poly);
bool is_c_fat(const Polygon& poly, double c);

struct Validation {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

/// Convex outer polygon with convex c-fat obstacles.
Validation validate_regular_terrain(const Terrain& t, double c);

}  // namespace thunt::geom
