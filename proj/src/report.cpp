#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "thunt/harness.hpp"

namespace thunt::harness {

using geom::distance;
using geom::kEps;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool trajectory_inside(const Terrain& t, const agent::Trajectory& traj) {
  for (const agent::TrajectoryPiece& piece : traj.pieces()) {
    for (std::size_t i = 1; i < piece.points.size(); ++i) {
      if (!geom::segment_in_terrain(piece.points[i - 1], piece.points[i], t)) return false;
    }
  }
  return true;
}

}  // namespace

std::size_t advice_bound(double L, double lambda) {
  return 10 + 6 * static_cast<std::size_t>(std::ceil(std::log2(3.0 * L / lambda + 5.0)));
}

double RunReport::max_cowpath_ratio() const {
  double best = 0.0;
  for (const agent::CowPathStats& c : cow_paths) {
    if (c.dmin > 0.0) best = std::max(best, c.walked / c.dmin);
  }
  return best;
}

RunReport hunt_scenario(const Scenario& s, const codec::AdviceString& advice) {
  RunReport r;
  r.advice = advice.to_text();
  r.advice_bits = advice.size();
  const auto fail = [&r](std::string what) { r.failures.push_back(std::move(what)); };

  try {
    const oracle::TreasureSpec spec = oracle::accessibility(s.terrain, s.treasure);
    r.rho = spec.rho;
    r.lambda = spec.lambda;
    r.L = oracle::shortest_path(s.terrain, s.start, s.treasure).length;
  } catch (const std::exception& e) {
    fail(std::string("oracle failed: ") + e.what());
    return r;
  }
  r.advice_limit = advice_bound(r.L, r.lambda);
  r.advice_bound_ok = r.advice_bits <= r.advice_limit;
  if (!r.advice_bound_ok) {
    fail("advice has " + std::to_string(r.advice_bits) + " bits, bound is " +
         std::to_string(r.advice_limit));
  }

  agent::HuntOptions opts;
  opts.strict = s.options.strict;
  opts.fatness = s.fatness;
  opts.treasure = s.treasure;
  opts.sample_step = s.options.sample_step;
  agent::HuntOutcome out;
  try {
    out = agent::thunt(s.terrain, s.start, advice, opts);
  } catch (const std::exception& e) {
    fail(std::string("hunt failed: ") + e.what());
    return r;
  }

  r.triple = out.triple;
  r.qprime = out.qprime;
  r.total_length = out.total_length;
  r.first_sight_length = out.first_sight_length;
  r.cow_paths = out.cow_paths;

  r.trajectory_in_terrain = trajectory_inside(s.terrain, out.trajectory);
  if (!r.trajectory_in_terrain) fail("trajectory leaves the terrain");
  r.reached_qprime = out.reached_qprime && distance(out.trajectory.end(), out.qprime) <= 1e-7;
  if (!r.reached_qprime) fail("agent did not reach the advised point");
  r.qprime_sees_treasure = geom::sees(out.qprime, s.treasure, s.terrain);
  if (!r.qprime_sees_treasure) fail("advised point does not see the treasure");

  r.cowpath_bound_ok = true;
  for (const agent::CowPathStats& c : r.cow_paths) {
    if (c.ring == geom::kOuterRing) continue;  // bound holds for convex obstacles only
    if (c.walked > std::max(9.0 * c.dmin, c.dmin + 2.0) + 1e-9) r.cowpath_bound_ok = false;
  }
  if (!r.cowpath_bound_ok && s.options.strict) fail("perimeter search exceeded max(9 dmin, dmin + 2)");

  if (r.first_sight_length) {
    r.ratio = *r.first_sight_length / std::max(r.L, kEps);
    r.cost_ratio = *r.first_sight_length / std::max(r.L, 1.0);
    r.cost_bound_ok = r.cost_ratio <= kCostCeiling;
    if (!r.cost_bound_ok) fail("first-sight cost ratio " + num(r.cost_ratio) + " exceeds 200");
  } else {
    r.ratio = r.cost_ratio = std::numeric_limits<double>::infinity();
    fail("treasure never seen along the trajectory");
  }
  r.trajectory = std::move(out.trajectory);
  return r;
}

RunReport run_scenario(const Scenario& s) {
  codec::AdviceString advice;
  try {
    advice = oracle::make_advice(s.terrain, s.start, s.treasure);
  } catch (const std::exception& e) {
    RunReport r;
    r.failures.push_back(std::string("advice failed: ") + e.what());
    return r;
  }
  return hunt_scenario(s, advice);
}

std::string format_report(const RunReport& r) {
  std::ostringstream os;
  const auto flag = [](bool b) { return b ? "yes" : "no"; };
  os << "status: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  os << "advice: " << r.advice << '\n';
  os << "advice_bits: " << r.advice_bits << " (bound " << r.advice_limit << ")\n";
  os << "triple: " << r.triple.a1 << ' ' << r.triple.a2 << ' ' << r.triple.a3 << '\n';
  os << "rho: " << num(r.rho) << '\n';
  os << "lambda: " << num(r.lambda) << '\n';
  os << "L: " << num(r.L) << '\n';
  os << "qprime: " << num(r.qprime.x) << ' ' << num(r.qprime.y) << '\n';
  os << "total_length: " << num(r.total_length) << '\n';
  os << "first_sight_length: " << (r.first_sight_length ? num(*r.first_sight_length) : "none")
     << '\n';
  os << "ratio: " << num(r.ratio) << '\n';
  os << "cost_ratio: " << num(r.cost_ratio) << '\n';
  os << "cow_paths: " << r.cow_paths.size() << '\n';
  for (const agent::CowPathStats& c : r.cow_paths) {
    os << "  ring " << c.ring << " dmin " << num(c.dmin) << " walked " << num(c.walked) << '\n';
  }
  os << "trajectory_in_terrain: " << flag(r.trajectory_in_terrain) << '\n';
  os << "reached_qprime: " << flag(r.reached_qprime) << '\n';
  os << "qprime_sees_treasure: " << flag(r.qprime_sees_treasure) << '\n';
  os << "advice_bound_ok: " << flag(r.advice_bound_ok) << '\n';
  os << "cowpath_bound_ok: " << flag(r.cowpath_bound_ok) << '\n';
  os << "cost_bound_ok: " << flag(r.cost_bound_ok) << '\n';
  for (const std::string& f : r.failures) os << "failure: " << f << '\n';
  return os.str();
}

BenchRow bench_row(std::uint64_t seed, const RunReport& r) {
  BenchRow row;
  row.seed = seed;
  row.lambda = r.lambda;
  row.L = r.L;
  row.advice_bits = r.advice_bits;
  row.first_sight_length = r.first_sight_length.value_or(std::nan(""));
  row.ratio = r.ratio;
  row.max_cowpath_ratio = r.max_cowpath_ratio();
  row.passed = r.passed();
  if (!row.passed) row.failure = r.failures.front();
  return row;
}

BenchRow bench_row(const gen::RandomTerrainParams& params) {
  try {
    gen::Scenario g = gen::random_regular_terrain(params);
    const Scenario s = make_scenario(std::move(g.terrain), g.start, g.treasure, params.c);
    return bench_row(params.seed, run_scenario(s));
  } catch (const std::exception& e) {
    BenchRow row;
    row.seed = params.seed;
    row.failure = e.what();
    return row;
  }
}

std::vector<BenchRow> run_bench(std::uint64_t first_seed, std::size_t count,
                                gen::RandomTerrainParams params, unsigned threads) {
  std::vector<BenchRow> rows(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      gen::RandomTerrainParams p = params;
      p.seed = first_seed + i;
      rows[i] = bench_row(p);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

std::string csv_header() {
  return "seed,lambda,L,advice_bits,first_sight_length,ratio,max_cowpath_ratio";
}

std::string csv_row(const BenchRow& row) {
  std::ostringstream os;
  os << row.seed << ',' << num(row.lambda) << ',' << num(row.L) << ',' << row.advice_bits << ','
     << num(row.first_sight_length) << ',' << num(row.ratio) << ','
     << num(row.max_cowpath_ratio);
  return os.str();
}

}  // namespace thunt::harness
