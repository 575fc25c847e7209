#pragma once

#include <hybrid_games/ogsolve.h>
#include <hybrid_games/scenario.h>
#include <hybrid_games/trajectory.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hybrid_games {

// Quantities read off a trajectory. All are pure functions of the trajectory
// and the scenario configuration.
struct ScenarioMetrics {
  double min_center_distance = 0.0;  // over player pairs and stages
  int overlap_count = 0;  // (stage, pair) rectangle overlaps, incl. static occluders
  double max_lane_deviation = 0.0;
  std::vector<double> lane_deviation;        // per player, max over stages
  std::vector<double> goal_distance;         // per player, at the last stage
  std::vector<double> speed_deviation;       // per player, sup |v - v_nom|
  std::vector<std::optional<int>> crossing_stage;  // first stage past the line
  double occluded_fraction = 0.0;
};

ScenarioMetrics ComputeMetrics(const TrajectoryIterate& trajectory,
                               const ScenarioConfig& config);

struct RunReport {
  std::string scenario;
  RunMode mode = RunMode::kHybrid;
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations = 0;
  std::string failure;
  std::vector<bool> occluded;
  ScenarioMetrics metrics;
  double wall_clock_s = 0.0;
};

struct RunResult {
  RunReport report;
  TrajectoryIterate trajectory;
  std::vector<IterationRecord> log;
};

// Hybrid mode detects occlusions from the iterate; the forced modes use a
// single open-loop or feedback period and never run the visibility test.
RunResult RunScenario(const ScenarioConfig& config);

struct ComparisonReport {
  std::array<RunResult, 3> runs;  // hybrid, openloop, feedback
  // Differences relative to the hybrid run (other - hybrid).
  double lane_deviation_delta_openloop = 0.0;
  double lane_deviation_delta_feedback = 0.0;
  bool hybrid_lane_keeping_no_worse_than_openloop = false;

  const RunResult& Run(RunMode mode) const {
    return runs[static_cast<std::size_t>(mode)];
  }
};

// Runs the three modes concurrently from the same initial state.
ComparisonReport CompareStructures(const ScenarioConfig& config);

}  // namespace hybrid_games
