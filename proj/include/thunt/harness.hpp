#pragma once

// Scenario files, end-to-end runs with verification, the seeded bench suite
// and SVG rendering.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thunt/agent.hpp"
#include "thunt/codec.hpp"
#include "thunt/generators.hpp"
#include "thunt/geom.hpp"
#include "thunt/oracle.hpp"

namespace thunt::harness {

using geom::Point;
using geom::Terrain;

/// Hard ceiling on first_sight_length / max(L, 1) for a passing run.
inline constexpr double kCostCeiling = 200.0;

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioOptions {
  bool strict = true;
  std::optional<double> sample_step;

  friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

struct Scenario {
  Terrain terrain;
  Point start;
  Point treasure;
  double fatness = 2.0;
  ScenarioOptions options;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Checks the scenario invariants: start in the terrain, treasure an
/// interior point, fatness > 1. Throws ScenarioError naming the violation.
Scenario make_scenario(Terrain terrain, Point start, Point treasure, double fatness,
                       ScenarioOptions options = {});

// Text format, one record per line, coordinates with 17 significant digits:
//
//   thunt-scenario 1
//   fatness 2
//   strict 1
//   sample_step 0.125        (optional)
//   start <x> <y>
//   treasure <x> <y>
//   outer <n>                followed by n lines "<x> <y>"
//   obstacle <n>             zero or more, same layout
//   end
//
// Blank lines and text after '#' are ignored.
std::string format_scenario(const Scenario& s);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

//   thunt-trajectory 1
//   start <x> <y>
//   piece free|perimeter <n>  followed by n lines "<x> <y>"
//   end
std::string format_trajectory(const agent::Trajectory& t);
agent::Trajectory parse_trajectory(std::string_view text);

/// 10 + 6 * ceil(log2(3L/lambda + 5)).
std::size_t advice_bound(double L, double lambda);

struct RunReport {
  std::string advice;
  std::size_t advice_bits = 0;
  std::size_t advice_limit = 0;
  codec::AdviceTriple triple;
  double rho = 0.0;
  double lambda = 0.0;
  double L = 0.0;
  Point qprime;
  double total_length = 0.0;
  std::optional<double> first_sight_length;
  double ratio = 0.0;       // first_sight_length / max(L, eps)
  double cost_ratio = 0.0;  // first_sight_length / max(L, 1)
  std::vector<agent::CowPathStats> cow_paths;
  std::optional<agent::Trajectory> trajectory;

  bool trajectory_in_terrain = false;
  bool reached_qprime = false;
  bool qprime_sees_treasure = false;
  bool advice_bound_ok = false;
  bool cowpath_bound_ok = false;
  bool cost_bound_ok = false;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  double max_cowpath_ratio() const;
};

/// Oracle advice, agent hunt, and verification of every run invariant.
RunReport run_scenario(const Scenario& s);

/// Hunt with externally supplied advice, then verify.
RunReport hunt_scenario(const Scenario& s, const codec::AdviceString& advice);

std::string format_report(const RunReport& r);

struct BenchRow {
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double L = 0.0;
  std::size_t advice_bits = 0;
  double first_sight_length = 0.0;
  double ratio = 0.0;
  double max_cowpath_ratio = 0.0;
  bool passed = false;
  std::string failure;
};

BenchRow bench_row(std::uint64_t seed, const RunReport& report);
/// Generates the seeded random regular terrain and runs it.
BenchRow bench_row(const gen::RandomTerrainParams& params);

/// Runs seeds [first_seed, first_seed + count) across `threads` workers.
/// Each scenario runs sequentially; rows come back in seed order.
std::vector<BenchRow> run_bench(std::uint64_t first_seed, std::size_t count,
                                gen::RandomTerrainParams params, unsigned threads = 0);

std::string csv_header();
std::string csv_row(const BenchRow& row);

struct SvgOptions {
  bool tiling = false;
  double width_px = 800.0;
};

/// SVG 1.1 drawing of the terrain, the treasure disc, the advised point and
/// (optionally) a trajectory coloured by provenance.
std::string render_svg(const Scenario& s, const std::optional<agent::Trajectory>& trajectory,
                       const SvgOptions& options = {});

}  // namespace thunt::harness
