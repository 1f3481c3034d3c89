// thunt: treasure hunting with advice in polygonal terrains.
//
//   thunt generate random --seed 7 -o s.txt
//   thunt run s.txt --svg s.svg
//   thunt bench --seeds 100 -o bench.csv

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "thunt/harness.hpp"

namespace h = thunt::harness;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RandomFlags {
  std::uint64_t seed = 0;
  int obstacles = 10;
  double c = 2.0;
  double extent = 20.0;

  void add(CLI::App* app) {
    app->add_option("--obstacles", obstacles, "Obstacle count")->check(CLI::NonNegativeNumber);
    app->add_option("--fatness", c, "Fatness constant c > 1");
    app->add_option("--extent", extent, "Outer polygon diameter");
  }

  thunt::gen::RandomTerrainParams params() const { return {seed, obstacles, c, extent}; }
};

h::Scenario random_scenario(const RandomFlags& f) {
  thunt::gen::Scenario g = thunt::gen::random_regular_terrain(f.params());
  return h::make_scenario(std::move(g.terrain), g.start, g.treasure, f.c);
}

int report_and_status(const h::RunReport& r) {
  std::cout << h::format_report(r);
  if (!r.passed()) {
    std::cerr << "thunt: run failed: " << r.failures.front() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Treasure hunting with advice in polygonal terrains"};
  app.require_subcommand(1);

  // advise
  std::string scenario_path;
  auto* advise = app.add_subcommand("advise", "Print the oracle's advice for a scenario");
  advise->add_option("scenario", scenario_path, "Scenario file")->required();

  // hunt
  std::string advice_text, trajectory_out, svg_out;
  auto* hunt = app.add_subcommand("hunt", "Run the agent with given advice and verify");
  hunt->add_option("scenario", scenario_path, "Scenario file")->required();
  hunt->add_option("--advice", advice_text, "Advice bit string")->required();
  hunt->add_option("--trajectory", trajectory_out, "Write the trajectory here");

  // run
  RandomFlags run_random;
  std::optional<std::uint64_t> run_seed;
  bool run_csv = false;
  auto* run = app.add_subcommand("run", "Advise, hunt and verify in one pass");
  run->add_option("scenario", scenario_path, "Scenario file");
  run->add_option("--seed", run_seed, "Use a seeded random regular terrain instead");
  run_random.add(run);
  run->add_option("--trajectory", trajectory_out, "Write the trajectory here");
  run->add_option("--svg", svg_out, "Write an SVG rendering here");
  run->add_flag("--csv", run_csv, "Print the bench CSV row instead of the report");

  // generate
  std::string family, out_path = "-";
  RandomFlags gen_random;
  int comb_a = 12, comb_i = 1, lb_k = 1, lb_target = 0;
  double comb_x = 0.25, lb_lambda = 1.0, empty_size = 4.0;
  std::optional<double> empty_qx, empty_qy;
  bool lenient = false;
  auto* generate = app.add_subcommand("generate", "Write a scenario file for a terrain family");
  generate->add_option("family", family, "random | comb | lb | empty")
      ->required()
      ->check(CLI::IsMember({"random", "comb", "lb", "empty"}));
  generate->add_option("-o,--output", out_path, "Output path (default stdout)");
  generate->add_option("--seed", gen_random.seed, "random: seed");
  gen_random.add(generate);
  generate->add_option("--A", comb_a, "comb: side length");
  generate->add_option("--x", comb_x, "comb: corridor width");
  generate->add_option("--i", comb_i, "comb: open corridor");
  generate->add_option("--k", lb_k, "lb: scale, side is 20 k lambda");
  generate->add_option("--lambda", lb_lambda, "lb: accessibility");
  generate->add_option("--target", lb_target, "lb: gadget holding the treasure");
  generate->add_option("--size", empty_size, "empty: square side");
  generate->add_option("--qx", empty_qx, "empty: treasure x");
  generate->add_option("--qy", empty_qy, "empty: treasure y");
  generate->add_flag("--lenient", lenient, "Mark the scenario as non-strict");

  // render
  std::string trajectory_in;
  bool tiling = false;
  auto* render = app.add_subcommand("render", "Render a scenario (and trajectory) as SVG");
  render->add_option("scenario", scenario_path, "Scenario file")->required();
  render->add_option("--trajectory", trajectory_in, "Trajectory file");
  render->add_flag("--tiling", tiling, "Overlay the advice tiling");
  render->add_option("-o,--output", out_path, "Output path (default stdout)");

  // bench
  RandomFlags bench_random;
  std::size_t seeds = 100;
  std::uint64_t first_seed = 1;
  unsigned threads = 0;
  auto* bench = app.add_subcommand("bench", "Run the seeded random suite and print CSV");
  bench->add_option("--seeds", seeds, "Number of scenarios");
  bench->add_option("--first-seed", first_seed, "First seed");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bench_random.add(bench);
  bench->add_option("-o,--output", out_path, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*advise) {
      const h::Scenario s = h::load_scenario(scenario_path);
      std::cout << thunt::oracle::make_advice(s.terrain, s.start, s.treasure).to_text() << '\n';
      return 0;
    }
    if (*hunt) {
      const h::Scenario s = h::load_scenario(scenario_path);
      const h::RunReport r = h::hunt_scenario(s, thunt::codec::AdviceString::from_text(advice_text));
      if (!trajectory_out.empty() && r.trajectory) {
        write_text(trajectory_out, h::format_trajectory(*r.trajectory));
      }
      return report_and_status(r);
    }
    if (*run) {
      if (scenario_path.empty() == !run_seed) {
        std::cerr << "thunt: run needs exactly one of a scenario file or --seed\n";
        return 2;
      }
      run_random.seed = run_seed.value_or(0);
      const h::Scenario s = run_seed ? random_scenario(run_random) : h::load_scenario(scenario_path);
      const h::RunReport r = h::run_scenario(s);
      if (!trajectory_out.empty() && r.trajectory) {
        write_text(trajectory_out, h::format_trajectory(*r.trajectory));
      }
      if (!svg_out.empty()) write_text(svg_out, h::render_svg(s, r.trajectory, {true}));
      if (run_csv) {
        std::cout << h::csv_header() << '\n' << h::csv_row(h::bench_row(run_random.seed, r)) << '\n';
        return r.passed() ? 0 : 1;
      }
      return report_and_status(r);
    }
    if (*generate) {
      h::Scenario s = [&]() -> h::Scenario {
        if (family == "random") return random_scenario(gen_random);
        if (family == "comb") {
          thunt::gen::Scenario g = thunt::gen::comb_terrain({comb_a, comb_i, comb_x});
          return h::make_scenario(std::move(g.terrain), g.start, g.treasure, 2.0, {false, {}});
        }
        if (family == "lb") {
          thunt::gen::LowerBoundTerrain lb = thunt::gen::regular_lb_terrain(lb_k, lb_lambda);
          if (lb_target < 0 || static_cast<std::size_t>(lb_target) >= lb.candidates.size()) {
            throw std::invalid_argument("--target must be below " +
                                        std::to_string(lb.candidates.size()));
          }
          const thunt::geom::Point q = lb.candidates[static_cast<std::size_t>(lb_target)];
          return h::make_scenario(std::move(lb.terrain), lb.start, q, 2.0);
        }
        const double a = empty_size;
        thunt::geom::Terrain t(thunt::geom::Polygon({{0, 0}, {a, 0}, {a, a}, {0, a}}), {});
        return h::make_scenario(std::move(t), {0, 0}, {empty_qx.value_or(a / 2), empty_qy.value_or(a / 2)},
                                2.0);
      }();
      if (lenient) s.options.strict = false;
      write_text(out_path, h::format_scenario(s));
      return 0;
    }
    if (*render) {
      const h::Scenario s = h::load_scenario(scenario_path);
      std::optional<thunt::agent::Trajectory> traj;
      if (!trajectory_in.empty()) traj = h::parse_trajectory(read_text(trajectory_in));
      write_text(out_path, h::render_svg(s, traj, {tiling}));
      return 0;
    }
    if (*bench) {
      const std::vector<h::BenchRow> rows =
          h::run_bench(first_seed, seeds, bench_random.params(), threads);
      std::ostringstream csv;
      csv << h::csv_header() << '\n';
      int failed = 0;
      double max_ratio = 0.0;
      for (const h::BenchRow& row : rows) {
        csv << h::csv_row(row) << '\n';
        if (!row.passed) {
          ++failed;
          std::cerr << "thunt: seed " << row.seed << " failed: " << row.failure << '\n';
        }
        max_ratio = std::max(max_ratio, row.ratio);
      }
      write_text(out_path, csv.str());
      std::cerr << "thunt: " << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size()
                << " passed, max ratio " << max_ratio << '\n';
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "thunt: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
