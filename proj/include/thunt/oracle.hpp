#pragma once

// Full-knowledge side of the treasure hunt: treasure accessibility, the
// start-anchored tiling, the advised tile, and ground-truth path lengths.

#include <cstdint>
#include <vector>

#include "thunt/codec.hpp"
#include "thunt/geom.hpp"

namespace thunt::oracle {

using geom::Point;
using geom::Terrain;

/// Tile disc radii are shrunk by this factor so that floating-point error in
/// the accessibility never admits a tile reaching outside the true disc.
inline constexpr double kLambdaShrink = 1.0 - 1e-6;

struct TreasureSpec {
  Point q;
  double rho = 0.0;     // radius of the largest free disc centred at q
  double lambda = 0.0;  // min(1, rho)
};

/// Signed tile coordinates. There is no row or column 0: column +1 starts at
/// the anchor and extends East, column -1 ends at the anchor; rows likewise
/// going North.
struct TileIndex {
  std::int64_t col = 1;
  std::int64_t row = 1;

  friend bool operator==(const TileIndex&, const TileIndex&) = default;
};

/// Square grid of side 1/a1 with the agent's start at a tile corner.
class Tiling {
 public:
  Tiling(Point anchor, std::int64_t a1);

  Point anchor() const { return anchor_; }
  std::int64_t a1() const { return a1_; }
  double side() const { return 1.0 / static_cast<double>(a1_); }

  Point tile_min(TileIndex idx) const;  // south-west corner
  Point tile_center(TileIndex idx) const;

  /// Maps a zero-based offset (tile k spans [k, k+1) sides from the anchor)
  /// to a signed index and back.
  static std::int64_t signed_index(std::int64_t offset) { return offset >= 0 ? offset + 1 : offset; }
  static std::int64_t offset_of(std::int64_t index) { return index > 0 ? index - 1 : index; }

 private:
  Point anchor_;
  std::int64_t a1_;
};

struct TileChoice {
  std::int64_t a1 = 1;
  TileIndex idx;
  Point qprime;
};

struct AdvicePlan {
  TreasureSpec spec;
  TileChoice tile;
  codec::AdviceTriple triple;
  codec::AdviceString advice;
};

struct PathResult {
  double length = 0.0;
  std::vector<Point> path;
};

/// Throws geom::GeometryError if q is not an interior point of the terrain.
TreasureSpec accessibility(const Terrain& t, Point q);

/// a1 = ceil(2 / lambda); picks the south-most, then west-most tile lying in
/// the closed disc of radius lambda * kLambdaShrink around q.
TileChoice select_tile(const Terrain& t, Point p, const TreasureSpec& spec);

AdvicePlan plan_advice(const Terrain& t, Point p, Point q);
codec::AdviceString make_advice(const Terrain& t, Point p, Point q);

/// Euclidean shortest path through the visibility graph of p, q and every
/// terrain vertex.
PathResult shortest_path(const Terrain& t, Point p, Point q);

/// Shortest path on an 8-connected lattice of the given spacing anchored at
/// p; q is attached to the lattice nodes it can reach within two spacings.
/// Every edge lies in the terrain, so the result bounds the geodesic from
/// above. Throws std::runtime_error if the lattice does not connect p to q.
double grid_path_oracle(const Terrain& t, Point p, Point q, double resolution);

}  // namespace thunt::oracle
