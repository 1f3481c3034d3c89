#pragma once

// Terrain families: the eight-square visibility gadget, the regular
// lower-bound terrain built from gadgets, comb polygons with one open
// corridor, and seeded random regular terrains.

#include <cstdint>
#include <random>
#include <vector>

#include "thunt/geom.hpp"

namespace thunt::gen {

using geom::Point;
using geom::Polygon;
using geom::Terrain;

/// Deterministic random source. Draws are portable across standard
/// libraries: only the raw 64-bit engine output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct GadgetParams {
  Point o;
  double lambda = 1.0;

  double side() const { return 1.5 * lambda; }          // x
  double gap() const { return (2.0 * lambda - side()) / 2.0; }  // y
  double hull_side() const { return 3.0 * side() + 2.0 * gap(); }
};

/// Eight axis-aligned squares of side 3*lambda/2 around o, ordered
/// N, E, S, W, NW, NE, SE, SW. Their convex hull is a square of side
/// 5*lambda centred at o.
std::vector<Polygon> gadget(const GadgetParams& params);

struct LowerBoundTerrain {
  Terrain terrain;
  Point start;
  double side = 0.0;                 // A = 20 k lambda
  std::vector<Point> candidates;     // centres of the gadget tiles
};

/// Square of side A = 20 k lambda with the start at its south-west corner and
/// a gadget in every tile with odd row and odd column (rows counted from the
/// north) of the north-east quadrant's 5-lambda tiling. The north wall is
/// raised by lambda so the top row of gadgets stays off the outer boundary.
LowerBoundTerrain regular_lb_terrain(int k, double lambda);

struct CombParams {
  int A = 12;
  int i = 1;
  /// Corridor width; defaults to 2^-A when unset.
  double x = 0.0;

  double width() const;
  std::int64_t corridors() const;  // k = A / (2x)
};

struct Scenario {
  Terrain terrain;
  Point start;
  Point treasure;
};

/// Rectilinear A x A polygon whose lower chamber opens into k vertical
/// corridors of width x in the third quarter of the height; only corridor i
/// reaches the upper chamber. Start at the lower-left corner, treasure 1
/// below the top side, horizontally centred.
Scenario comb_terrain(const CombParams& params);

/// Convex hull of n points jittered around a circle; each point's radius is
/// drawn from [min_radius_fraction, 1] * radius.
Polygon random_convex_polygon(Rng& rng, Point center, double radius, int n,
                              double min_radius_fraction = 0.7);

/// Rejection-samples random convex polygons until one is c-fat.
Polygon random_fat_polygon(Rng& rng, Point center, double radius, double c);

struct RandomTerrainParams {
  std::uint64_t seed = 0;
  int obstacles = 10;
  double c = 2.0;
  double extent = 20.0;
};

/// Convex outer polygon of diameter about `extent` holding convex c-fat
/// obstacles with clearance >= 0.1 to each other and to the outer boundary.
/// The start has positive clearance, the treasure clearance >= 0.05, and the
/// two are at least 1 apart. Throws std::runtime_error when placement fails.
Scenario random_regular_terrain(const RandomTerrainParams& params);

}  // namespace thunt::gen
