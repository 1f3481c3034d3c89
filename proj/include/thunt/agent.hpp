#pragma once

// Advice-only side of the treasure hunt. The agent decodes its advice,
// rebuilds the tiling around its start, and walks the line toward the advised
// tile centre, circumventing each obstacle it hits by a doubling search along
// the obstacle's perimeter.

#include <optional>
#include <stdexcept>
#include <vector>

#include "thunt/codec.hpp"
#include "thunt/geom.hpp"
#include "thunt/oracle.hpp"

namespace thunt::agent {

using geom::Point;
using geom::RingId;
using geom::Sense;
using geom::Terrain;

class NavigationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Provenance { FreeMove, PerimeterWalk };

struct TrajectoryPiece {
  std::vector<Point> points;
  Provenance provenance = Provenance::FreeMove;
  double length = 0.0;

  friend bool operator==(const TrajectoryPiece&, const TrajectoryPiece&) = default;
};

/// Ordered polyline pieces sharing endpoints, starting at a fixed point.
class Trajectory {
 public:
  explicit Trajectory(Point start) : start_(start) {}

  /// Appends a piece whose first point must coincide with end().
  void append(std::vector<Point> points, Provenance provenance);

  Point start() const { return start_; }
  Point end() const { return pieces_.empty() ? start_ : pieces_.back().points.back(); }
  double length() const { return length_; }
  const std::vector<TrajectoryPiece>& pieces() const { return pieces_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  Point start_;
  std::vector<TrajectoryPiece> pieces_;
  double length_ = 0.0;
};

/// Directed line of travel: from origin toward target.
struct Line {
  Point origin;
  Point target;
};

struct Directions {
  Sense first;
  Sense second;
};

/// dir1/dir2 at point r of a ring. At a vertex dir1 follows the adjacent side
/// closer in angle to north (ties go to the smaller clockwise bearing); inside
/// a horizontal side it heads west; inside any other side it heads to the
/// side's northern part.
Directions choose_directions(const geom::Polygon& ring, Point r, Point north = {0.0, 1.0});

struct CowPathStats {
  RingId ring = geom::kOuterRing;
  Point r;
  Point r_prime;
  double dmin = 0.0;    // shorter perimeter distance between r and r_prime
  double walked = 0.0;  // perimeter length walked, including returns
};

/// Doubling search along the ring from r with leg lengths 1, 2, 4, ...
/// alternating dir1 and dir2, returning to r after each failed leg, until
/// the walk covers r_prime: the next crossing of the line beyond r. Appends
/// every leg to the trajectory. Throws NavigationError when the line has no
/// further crossing (tangential contact).
CowPathStats cow_path(const Terrain& t, RingId ring, const Line& line, Point r,
                      Trajectory& trajectory);

struct HuntOptions {
  /// Refuse to navigate terrains that are not regular for `fatness`.
  bool strict = false;
  double fatness = 2.0;
  /// Simulator-side observer: when set, the first arc length at which the
  /// treasure is visible is recorded. The agent never reads it.
  std::optional<Point> treasure;
  /// Sampling step for first-sight detection; defaults to min(lambda, 1)/8.
  std::optional<double> sample_step;
  std::size_t max_obstacle_hits = 100000;
};

struct HuntOutcome {
  Trajectory trajectory{Point{}};
  codec::AdviceTriple triple;
  Point qprime;
  bool reached_qprime = false;
  std::optional<double> first_sight_length;
  double total_length = 0.0;
  std::vector<CowPathStats> cow_paths;
};

/// Decodes the advice and walks toward the advised tile centre.
/// Throws codec::DecodeError on malformed advice and NavigationError when the
/// advised point lies outside the terrain, the terrain is rejected in strict
/// mode, or the walk cannot continue.
HuntOutcome thunt(const Terrain& t, Point start, const codec::AdviceString& advice,
                  const HuntOptions& options = {});

/// First arc length along the trajectory at which `treasure` is visible,
/// sampled at `step` and refined by bisection to 1e-6.
std::optional<double> first_sight_length(const Terrain& t, const Trajectory& trajectory,
                                         Point treasure, double step);

}  // namespace thunt::agent
