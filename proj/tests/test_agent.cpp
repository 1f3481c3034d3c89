#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thunt/agent.hpp"
#include "thunt/generators.hpp"
#include "thunt/oracle.hpp"

using namespace thunt::agent;
using support::rect;
using support::square;
using thunt::geom::distance;
using thunt::geom::Polygon;

namespace {

bool on_some_ring(Point x, const Terrain& t) {
  if (t.outer().nearest_edge(x).second <= 1e-9) return true;
  for (const Polygon& ob : t.obstacles()) {
    if (ob.nearest_edge(x).second <= 1e-9) return true;
  }
  return false;
}

void check_trajectory_pieces(const Trajectory& traj, const Terrain& t) {
  for (const TrajectoryPiece& piece : traj.pieces()) {
    for (std::size_t i = 1; i < piece.points.size(); ++i) {
      const Point a = piece.points[i - 1];
      const Point b = piece.points[i];
      if (piece.provenance == Provenance::FreeMove) {
        CHECK(thunt::geom::segment_in_terrain(a, b, t));
      } else {
        CHECK(on_some_ring(a, t));
        CHECK(on_some_ring(b, t));
        CHECK(on_some_ring(thunt::geom::lerp(a, b, 0.5), t));
      }
    }
  }
}

}  // namespace

TEST_CASE("trajectory pieces must join") {
  Trajectory t({0, 0});
  t.append({{0, 0}, {1, 0}}, Provenance::FreeMove);
  t.append({{1, 0}}, Provenance::FreeMove);          // ignored
  t.append({{1, 0}, {1, 0}}, Provenance::FreeMove);  // zero length, ignored
  CHECK(t.pieces().size() == 1);
  CHECK_THROWS_AS(t.append({{2, 0}, {3, 0}}, Provenance::FreeMove), NavigationError);
  t.append({{1, 0}, {1, 2}}, Provenance::PerimeterWalk);
  CHECK(t.length() == doctest::Approx(3));
  CHECK(t.end() == Point{1, 2});
}

TEST_CASE("choose_directions") {
  const Polygon unit = rect(0, 0, 1, 1);  // stored ccw from (0,0)
  CHECK(choose_directions(unit, {1, 0.5}).first == Sense::Ccw);  // east side, north is ccw
  CHECK(choose_directions(unit, {0, 0.5}).first == Sense::Cw);   // west side, north is cw
  CHECK(choose_directions(unit, {0.5, 0}).first == Sense::Cw);   // south side, west is cw
  CHECK(choose_directions(unit, {0.5, 1}).first == Sense::Ccw);  // north side, west is ccw
  CHECK(choose_directions(unit, {0, 0}).first == Sense::Cw);     // corner: vertical side
  CHECK(choose_directions(unit, {1, 0}).first == Sense::Ccw);
  const Directions d = choose_directions(unit, {0, 0});
  CHECK(d.second == thunt::geom::opposite(d.first));

  // tie at the bottom of a diamond: both sides at 45 degrees, the eastward
  // one has the smaller clockwise bearing
  const Polygon diamond({{0, -1}, {1, 0}, {0, 1}, {-1, 0}});
  CHECK(choose_directions(diamond, {0, -1}).first == Sense::Ccw);
}

TEST_CASE("cow_path worked example") {
  const Terrain t(rect(0, 0, 4, 4), {square({2, 2}, 1)});
  Trajectory traj({1.5, 2});
  const CowPathStats s = cow_path(t, 0, {{0, 2}, {4, 2}}, {1.5, 2}, traj);
  CHECK(s.r_prime.x == doctest::Approx(2.5));
  CHECK(s.r_prime.y == doctest::Approx(2));
  CHECK(s.walked == doctest::Approx(4));
  CHECK(s.dmin == doctest::Approx(2));
  CHECK(traj.length() == doctest::Approx(4));
  CHECK(distance(traj.end(), {2.5, 2}) < 1e-12);
  // leg 1 goes north first
  REQUIRE(traj.pieces().size() == 3);
  CHECK(traj.pieces()[0].points[1].y > 2);
}

TEST_CASE("cow_path found on the first leg") {
  const Terrain t(rect(0, 0, 4, 4), {square({2, 2}, 1)});
  Trajectory traj({1.5, 2.25});
  const CowPathStats s = cow_path(t, 0, {{0.5, 1.25}, {3, 3.75}}, {1.5, 2.25}, traj);
  CHECK(s.r_prime.x == doctest::Approx(1.75));
  CHECK(s.r_prime.y == doctest::Approx(2.5));
  CHECK(s.walked == doctest::Approx(0.5));
  CHECK(traj.pieces().size() == 1);
}

TEST_CASE("cow_path rejects a tangential contact") {
  const Terrain t(rect(0, 0, 4, 4), {square({2, 2}, 1)});
  Trajectory traj({1.5, 2.5});
  CHECK_THROWS_AS(cow_path(t, 0, {{0, 2.5}, {4, 2.5}}, {1.5, 2.5}, traj), NavigationError);
}

TEST_CASE("thunt on an empty terrain walks straight to the advised point") {
  const Terrain t(rect(-3, -3, 4, 4), {});
  const HuntOutcome out = thunt::agent::thunt(t, {0, 0}, thunt::codec::encode({2, 2, 1}));
  CHECK(out.reached_qprime);
  CHECK(out.qprime == Point{0.75, 0.25});
  CHECK(out.total_length == doctest::Approx(std::sqrt(0.75 * 0.75 + 0.25 * 0.25)));
  REQUIRE(out.trajectory.pieces().size() == 1);
  CHECK(out.trajectory.pieces()[0].provenance == Provenance::FreeMove);
  CHECK(out.cow_paths.empty());
}

TEST_CASE("thunt around one obstacle") {
  const Terrain t(rect(0, 0, 10, 10), {square({5, 5}, 1)});
  const Point p{1, 5.1};
  const Point q{8.6, 5.1};
  const auto advice = thunt::oracle::make_advice(t, p, q);
  HuntOptions opts;
  opts.strict = true;
  opts.treasure = q;
  const HuntOutcome out = thunt::agent::thunt(t, p, advice, opts);
  CHECK(out.reached_qprime);
  REQUIRE(out.cow_paths.size() == 1);
  CHECK(out.cow_paths[0].ring == 0);
  CHECK(distance(out.trajectory.end(), out.qprime) < 1e-9);
  const auto& pieces = out.trajectory.pieces();
  CHECK(pieces.front().provenance == Provenance::FreeMove);
  CHECK(pieces.back().provenance == Provenance::FreeMove);
  check_trajectory_pieces(out.trajectory, t);
  REQUIRE(out.first_sight_length);
  CHECK(*out.first_sight_length <= out.total_length);
  CHECK(thunt::geom::sees(out.qprime, q, t));
}

TEST_CASE("first sight at the start costs nothing") {
  const Terrain t = support::empty_square(10);
  const Point p{5, 5};
  const Point q{5.5, 5.5};
  HuntOptions opts;
  opts.treasure = q;
  const HuntOutcome out = thunt::agent::thunt(t, p, thunt::oracle::make_advice(t, p, q), opts);
  REQUIRE(out.first_sight_length);
  CHECK(*out.first_sight_length == 0.0);
}

TEST_CASE("first_sight_length brackets the first visible point") {
  const Terrain t = support::empty_square(10);
  Trajectory traj({0, 5});
  traj.append({{0, 5}, {9, 5}}, Provenance::FreeMove);
  const auto s = first_sight_length(t, traj, {5, 5}, 0.125);
  REQUIRE(s);
  CHECK(*s >= 4.0 - 1e-9);
  CHECK(*s <= 4.0 + 1e-6);
  CHECK_FALSE(first_sight_length(t, traj, {5, 7}, 0.125));
}

TEST_CASE("strict mode refuses non-regular terrains") {
  const auto comb = thunt::gen::comb_terrain({12, 1, 0.25});
  const auto advice = thunt::oracle::make_advice(comb.terrain, comb.start, comb.treasure);
  HuntOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(thunt::agent::thunt(comb.terrain, comb.start, advice, strict), NavigationError);
  const HuntOutcome out = thunt::agent::thunt(comb.terrain, comb.start, advice);
  CHECK(out.reached_qprime);
  CHECK(thunt::geom::sees(out.qprime, comb.treasure, comb.terrain));
  check_trajectory_pieces(out.trajectory, comb.terrain);
}

TEST_CASE("malformed advice is rejected") {
  CHECK_THROWS_AS(thunt::agent::thunt(support::empty_square(4), {1, 1}, thunt::codec::AdviceString::from_text("0101")),
                  thunt::codec::DecodeError);
  // advised point far outside the terrain
  CHECK_THROWS_AS(thunt::agent::thunt(support::empty_square(4), {1, 1}, thunt::codec::encode({1, 50, 1})),
                  NavigationError);
}

TEST_CASE("property: cow-path walk stays within max(9 dmin, dmin + 2)") {
  thunt::gen::Rng rng(21);
  for (int n = 0; n < 300; ++n) {
    const Polygon poly = thunt::gen::random_fat_polygon(rng, {0, 0}, rng.uniform(0.3, 6), 2.0);
    const Terrain t(rect(-10, -10, 10, 10), {poly});
    const Point a = support::sample_on_ring(rng, poly);
    const Point b = support::sample_on_ring(rng, poly);
    if (distance(a, b) < 1e-3) continue;
    if (poly.nearest_edge(thunt::geom::lerp(a, b, 0.5)).second < 1e-6) continue;  // chord on an edge
    Trajectory traj(a);
    const CowPathStats s = cow_path(t, 0, {a - (b - a), b}, a, traj);
    CHECK(distance(s.r_prime, b) < 1e-7);
    CHECK(s.walked <= std::max(9 * s.dmin, s.dmin + 2) + 1e-9);
    CHECK(traj.length() == doctest::Approx(s.walked));
    CHECK(distance(traj.end(), s.r_prime) < 1e-9);
  }
}

TEST_CASE("property: hunts on random regular terrains reach the advised point") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto sc = thunt::gen::random_regular_terrain({seed, 12, 2.0, 10.0});
    const auto advice = thunt::oracle::make_advice(sc.terrain, sc.start, sc.treasure);
    HuntOptions opts;
    opts.strict = true;
    opts.treasure = sc.treasure;
    const HuntOutcome a = thunt::agent::thunt(sc.terrain, sc.start, advice, opts);
    const HuntOutcome b = thunt::agent::thunt(sc.terrain, sc.start, advice, opts);
    CHECK(a.reached_qprime);
    CHECK(thunt::geom::sees(a.qprime, sc.treasure, sc.terrain));
    CHECK(a.trajectory == b.trajectory);
    CHECK(a.first_sight_length.has_value());
    check_trajectory_pieces(a.trajectory, sc.terrain);
  }
}
