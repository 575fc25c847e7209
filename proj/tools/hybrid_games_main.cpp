// Command-line driver: solve a scenario, compare information structures, or
// time the hybrid LQ solve against the state dimension.

#include <hybrid_games/benchmark.h>
#include <hybrid_games/run_scenario.h>
#include <hybrid_games/scenario.h>
#include <hybrid_games/svg_plot.h>
#include <hybrid_games/trajectory_io.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hybrid_games;

namespace {

struct Overrides {
  std::optional<int> max_iters;
  std::optional<double> eta;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

void Apply(const Overrides& o, ScenarioConfig& config) {
  if (o.max_iters) config.solver.max_iterations = *o.max_iters;
  if (o.eta) config.solver.eta = *o.eta;
  if (o.tol) config.solver.state_tolerance = config.solver.control_tolerance = *o.tol;
  if (o.seed) config.seed = *o.seed;
  config.Validate();
}

void PrintSummary(const RunReport& r) {
  std::printf("%-9s converged=%d iterations=%d occluded=%.3f overlaps=%d "
              "min_dist=%.3f max_lane_dev=%.3f time=%.2fs%s%s\n",
              ToString(r.mode).c_str(), r.converged, r.iterations,
              r.metrics.occluded_fraction, r.metrics.overlap_count,
              r.metrics.min_center_distance, r.metrics.max_lane_deviation,
              r.wall_clock_s, r.failure.empty() ? "" : " failure=",
              r.failure.c_str());
}

void WriteRun(const RunResult& run, const ScenarioConfig& config, const fs::path& dir,
              const std::string& stem, bool svg) {
  ExportTrajectory(run.trajectory, config.dt, (dir / (stem + ".csv")).string());
  WriteReport(run.report, (dir / (stem + ".json")).string());
  if (svg) EmitPlot(run.trajectory, config, (dir / (stem + ".svg")).string());
}

std::vector<Dimension> ParseDims(const std::string& text) {
  std::vector<Dimension> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma - start);
    if (!item.empty()) dims.push_back(std::stol(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid-information dynamic game solver"};
  app.require_subcommand(1);

  std::string scenario_path, mode_name = "", out_dir = ".", dims_text = "8,16,32,64,128";
  bool svg = false;
  Overrides overrides;
  int bench_repeats = 5;

  auto* run = app.add_subcommand("run", "Solve one scenario");
  run->add_option("--scenario", scenario_path, "Scenario TOML file")->required();
  run->add_option("--mode", mode_name, "hybrid|openloop|feedback (default: from file)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--max-iters", overrides.max_iters, "Iteration budget");
  run->add_option("--eta", overrides.eta, "Step size in (0, 1]");
  run->add_option("--tol", overrides.tol, "State and control tolerance");
  run->add_option("--seed", overrides.seed, "Initialization jitter seed (0 = none)");
  run->add_flag("--svg", svg, "Also write an SVG plot");

  auto* compare = app.add_subcommand("compare", "Run all three information structures");
  compare->add_option("--scenario", scenario_path, "Scenario TOML file")->required();
  compare->add_option("--out", out_dir, "Output directory");
  compare->add_option("--max-iters", overrides.max_iters, "Iteration budget");
  compare->add_option("--eta", overrides.eta, "Step size in (0, 1]");
  compare->add_option("--tol", overrides.tol, "State and control tolerance");
  compare->add_option("--seed", overrides.seed, "Initialization jitter seed (0 = none)");
  compare->add_flag("--svg", svg, "Also write SVG plots");

  auto* bench = app.add_subcommand("bench", "Time the hybrid LQ solve");
  bench->add_option("--state-dims", dims_text, "Comma-separated state dimensions");
  bench->add_option("--repeats", bench_repeats, "Repeats per dimension (fastest kept)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      BenchmarkSettings settings;
      settings.state_dims = ParseDims(dims_text);
      settings.repeats = bench_repeats;
      const BenchmarkResult result = BenchmarkHybridSolve(settings);
      std::printf("%8s %14s\n", "n", "seconds");
      for (const auto& p : result.points)
        std::printf("%8ld %14.6e\n", static_cast<long>(p.state_dim), p.seconds);
      std::printf("log-log slope: %.3f\n", result.slope);
      return 0;
    }

    ScenarioConfig config = LoadScenario(scenario_path);
    if (!mode_name.empty()) config.mode = ParseRunMode(mode_name);
    Apply(overrides, config);
    fs::create_directories(out_dir);

    if (run->parsed()) {
      const RunResult result = RunScenario(config);
      WriteRun(result, config, out_dir, "trajectory", svg);
      PrintSummary(result.report);
      return result.report.converged ? 0 : 1;
    }

    const ComparisonReport comparison = CompareStructures(config);
    bool all_converged = true;
    for (const auto& r : comparison.runs) {
      WriteRun(r, config, out_dir, "trajectory_" + ToString(r.report.mode), svg);
      PrintSummary(r.report);
      all_converged &= r.report.converged;
    }
    std::FILE* f = std::fopen((fs::path(out_dir) / "comparison.json").c_str(), "w");
    if (!f) throw std::runtime_error("cannot write comparison.json");
    std::fputs(ComparisonJson(comparison).c_str(), f);
    std::fclose(f);
    std::printf("hybrid lane-keeping no worse than open-loop: %s\n",
                comparison.hybrid_lane_keeping_no_worse_than_openloop ? "yes" : "no");
    return all_converged ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
