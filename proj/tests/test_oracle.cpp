#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thunt/codec.hpp"
#include "thunt/generators.hpp"
#include "thunt/oracle.hpp"

using namespace thunt::oracle;
using support::rect;
using support::square;
using thunt::geom::distance;
using thunt::geom::Point;
using thunt::geom::Terrain;

namespace {

struct ScanResult {
  std::int64_t a1;
  std::int64_t col;
  std::int64_t row;
  Point center;
};

// Scans every tile near q in row-major order from the south-west and keeps the
// first one whose corners all lie in the shrunk closed disc.
ScanResult brute_tile(Point p, Point q, double lambda) {
  const auto a1 = static_cast<std::int64_t>(std::ceil(2.0 / lambda));
  const double side = 1.0 / static_cast<double>(a1);
  const double r = lambda * (1.0 - 1e-6);
  const auto k0 = static_cast<std::int64_t>(std::floor((q.x - p.x - lambda) / side)) - 2;
  const auto m0 = static_cast<std::int64_t>(std::floor((q.y - p.y - lambda) / side)) - 2;
  const std::int64_t span = 2 * a1 + 6;
  for (std::int64_t m = m0; m <= m0 + span; ++m) {
    for (std::int64_t k = k0; k <= k0 + span; ++k) {
      const double x0 = p.x + static_cast<double>(k) * side;
      const double y0 = p.y + static_cast<double>(m) * side;
      bool inside = true;
      for (Point c : {Point{x0, y0}, Point{x0 + side, y0}, Point{x0, y0 + side}, Point{x0 + side, y0 + side}}) {
        if (distance(c, q) > r) inside = false;
      }
      if (inside) {
        return {a1, k >= 0 ? k + 1 : k, m >= 0 ? m + 1 : m, {x0 + side / 2, y0 + side / 2}};
      }
    }
  }
  return {a1, 0, 0, {}};
}

Terrain big_empty() { return Terrain(rect(-3, -3, 4, 4), {}); }

}  // namespace

TEST_CASE("accessibility") {
  const TreasureSpec c = accessibility(support::empty_square(4), {2, 2});
  CHECK(c.rho == doctest::Approx(2));
  CHECK(c.lambda == doctest::Approx(1));
  CHECK(accessibility(support::empty_square(4), {2, 0.25}).lambda == doctest::Approx(0.25));
  const Terrain t(rect(0, 0, 10, 10), {rect(5.5, 3, 7, 7)});
  CHECK(accessibility(t, {5, 5}).lambda == doctest::Approx(0.5));
  CHECK_THROWS(accessibility(support::empty_square(4), {0, 2}));
  CHECK_THROWS(accessibility(t, {6, 5}));
}

TEST_CASE("tiling indices skip zero") {
  CHECK(Tiling::signed_index(0) == 1);
  CHECK(Tiling::signed_index(-1) == -1);
  CHECK(Tiling::offset_of(1) == 0);
  CHECK(Tiling::offset_of(-2) == -2);
  const Tiling tiling({1, 1}, 4);
  CHECK(tiling.tile_min({1, 1}) == Point{1, 1});
  CHECK(tiling.tile_center({-1, 2}).x == doctest::Approx(0.875));
  CHECK(tiling.tile_center({-1, 2}).y == doctest::Approx(1.375));
}

TEST_CASE("select_tile worked example") {
  const Terrain t = big_empty();
  const TileChoice tc = select_tile(t, {0, 0}, accessibility(t, {0.75, 0.75}));
  CHECK(tc.a1 == 2);
  CHECK(tc.idx == TileIndex{2, 1});
  CHECK(tc.qprime.x == doctest::Approx(0.75));
  CHECK(tc.qprime.y == doctest::Approx(0.25));

  const ScanResult ref = brute_tile({0, 0}, {0.75, 0.75}, 1.0);
  CHECK(ref.a1 == 2);
  CHECK(ref.col == 2);
  CHECK(ref.row == 1);
}

TEST_CASE("select_tile prefers the south-most row over q's own") {
  const Terrain t = support::empty_square(10);
  const Point p{0.5, 0.5};
  const Point q{5.25, 5.25};  // a tile centre for a1 = 2
  const TileChoice tc = select_tile(t, p, accessibility(t, q));
  const ScanResult ref = brute_tile(p, q, 1.0);
  CHECK(tc.idx.row == ref.row);
  CHECK(tc.idx.col == ref.col);
  CHECK(Tiling::offset_of(tc.idx.row) < 9);  // q sits in offset row 9
}

TEST_CASE("make_advice examples") {
  const Terrain t = big_empty();
  CHECK(make_advice(t, {0, 0}, {0.75, 0.75}) == thunt::codec::encode({2, 2, 1}));
  const auto mirrored = thunt::codec::decode(make_advice(t, {0, 0}, {-0.75, -0.75}));
  CHECK(mirrored.a2 < 0);
  CHECK(mirrored.a3 < 0);
  const auto near = thunt::codec::decode(make_advice(t, {0, 0}, {0.1, 0.1}));
  CHECK(near.a2 != 0);
  CHECK(near.a3 != 0);
}

TEST_CASE("shortest_path examples") {
  const PathResult direct = shortest_path(support::empty_square(4), {0.5, 0.5}, {3, 2});
  CHECK(direct.length == doctest::Approx(distance({0.5, 0.5}, {3, 2})));
  CHECK(direct.path.size() == 2);

  // unit square centred on pq: around two corners on either side
  const Terrain t(rect(0, 0, 4, 4), {square({2, 2}, 1)});
  const PathResult around = shortest_path(t, {0, 2}, {4, 2});
  CHECK(around.length == doctest::Approx(2 * std::hypot(1.5, 0.5) + 1));

  // the same square turned 45 degrees: one corner, two segments, either side
  const double h = std::sqrt(0.5);
  const Terrain diamond(rect(0, 0, 4, 4), {thunt::geom::Polygon({{2, 2 - h}, {2 + h, 2}, {2, 2 + h}, {2 - h, 2}})});
  const PathResult tip = shortest_path(diamond, {0, 2}, {4, 2});
  CHECK(tip.length == doctest::Approx(2 * std::hypot(2.0, h)));
  REQUIRE(tip.path.size() == 3);
  CHECK(std::abs(tip.path[1].y - 2) == doctest::Approx(h));

  // obstacle clipping pq: detour through its north-west corner only
  const Terrain one(rect(0, 0, 6, 6), {rect(2, 1, 3, 2.5)});
  const PathResult bend = shortest_path(one, {1, 2}, {5, 3.5});
  CHECK(bend.length == doctest::Approx(distance({1, 2}, {2, 2.5}) + distance({2, 2.5}, {5, 3.5})));
  REQUIRE(bend.path.size() == 3);
  CHECK(bend.path[1] == Point{2, 2.5});

  const auto comb = thunt::gen::comb_terrain({12, 1, 0.25});
  const double L = shortest_path(comb.terrain, comb.start, comb.treasure).length;
  CHECK(L > 6);
  CHECK(L < 30);
}

TEST_CASE("grid_path_oracle") {
  const Terrain t = support::empty_square(4);
  const double g = grid_path_oracle(t, {0.3, 0.2}, {3.7, 2.9}, 0.05);
  const double d = distance({0.3, 0.2}, {3.7, 2.9});
  CHECK(g >= d - 1e-9);
  CHECK(g <= 1.09 * d);
  CHECK(grid_path_oracle(t, {1, 1}, {1, 1}, 0.05) == doctest::Approx(0.0));
}

TEST_CASE("property: selected tile sits in the treasure disc and matches the scan") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto sc = thunt::gen::random_regular_terrain({seed, 10, 2.0, 20.0});
    const TreasureSpec spec = accessibility(sc.terrain, sc.treasure);
    const TileChoice tc = select_tile(sc.terrain, sc.start, spec);
    const TileChoice again = select_tile(sc.terrain, sc.start, spec);
    CHECK(tc.idx == again.idx);

    const ScanResult ref = brute_tile(sc.start, sc.treasure, spec.lambda);
    CHECK(tc.a1 == ref.a1);
    CHECK(tc.idx.col == ref.col);
    CHECK(tc.idx.row == ref.row);

    const Tiling tiling(sc.start, tc.a1);
    const Point m = tiling.tile_min(tc.idx);
    const double s = tiling.side();
    for (Point c : {m, m + Point{s, 0}, m + Point{0, s}, m + Point{s, s}}) {
      CHECK(distance(c, sc.treasure) <= spec.lambda);
    }
    CHECK(thunt::geom::sees(tc.qprime, sc.treasure, sc.terrain));

    const double L = shortest_path(sc.terrain, sc.start, sc.treasure).length;
    CHECK(std::abs(tc.idx.col) <= 3 * L / spec.lambda + 4);
    CHECK(std::abs(tc.idx.row) <= 3 * L / spec.lambda + 4);
  }
}

TEST_CASE("property: shortest_path is symmetric and bounded below by the straight line") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto sc = thunt::gen::random_regular_terrain({seed, 10, 2.0, 12.0});
    const PathResult fwd = shortest_path(sc.terrain, sc.start, sc.treasure);
    const PathResult back = shortest_path(sc.terrain, sc.treasure, sc.start);
    CHECK(std::abs(fwd.length - back.length) <= 1e-9 * std::max(1.0, fwd.length));
    CHECK(fwd.length >= distance(sc.start, sc.treasure) - 1e-12);
    if (thunt::geom::segment_in_terrain(sc.start, sc.treasure, sc.terrain)) {
      CHECK(fwd.length == doctest::Approx(distance(sc.start, sc.treasure)));
    }
    for (std::size_t i = 1; i < fwd.path.size(); ++i) {
      CHECK(thunt::geom::segment_in_terrain(fwd.path[i - 1], fwd.path[i], sc.terrain));
    }
    CHECK(thunt::geom::polyline_length(fwd.path) == doctest::Approx(fwd.length));
  }
}
