#include <hybrid_games/geometry.h>
#include <hybrid_games/run_scenario.h>
#include <hybrid_games/visibility.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>

namespace hybrid_games {

ScenarioMetrics ComputeMetrics(const TrajectoryIterate& trajectory,
                               const ScenarioConfig& config) {
  const std::size_t n = config.NumPlayers();
  ScenarioMetrics m;
  m.min_center_distance = std::numeric_limits<double>::infinity();
  m.lane_deviation.assign(n, 0.0);
  m.speed_deviation.assign(n, 0.0);
  m.goal_distance.assign(n, 0.0);
  m.crossing_stage.assign(n, std::nullopt);

  std::vector<OrientedRectangle> bodies(n);
  for (int kk = 0; kk < trajectory.Horizon(); kk++) {
    const VectorXd& x = trajectory.states[kk];
    for (PlayerIndex ii = 0; ii < n; ii++) {
      const PlayerConfig& p = config.players[ii];
      bodies[ii] = PlayerRectangle(x, ii, p.shape);
      const Vector2d pos = bodies[ii].center;
      const double v = x(ii * kUnicycleStateDim + kSpeed);
      m.lane_deviation[ii] =
          std::max(m.lane_deviation[ii], std::abs(p.weights.lane.SignedDistance(pos)));
      m.speed_deviation[ii] =
          std::max(m.speed_deviation[ii], std::abs(v - p.weights.nominal_speed));
      if (p.crossing && !m.crossing_stage[ii] && p.crossing->Crossed(pos))
        m.crossing_stage[ii] = kk;
    }
    for (PlayerIndex ii = 0; ii < n; ii++) {
      for (PlayerIndex jj = ii + 1; jj < n; jj++) {
        m.min_center_distance = std::min(
            m.min_center_distance, (bodies[ii].center - bodies[jj].center).norm());
        if (RectanglesOverlap(bodies[ii], bodies[jj])) m.overlap_count++;
      }
      for (const auto& occluder : config.static_occluders)
        if (RectanglesOverlap(bodies[ii], occluder)) m.overlap_count++;
    }
  }

  if (trajectory.Horizon() > 0) {
    const VectorXd& last = trajectory.states.back();
    for (PlayerIndex ii = 0; ii < n; ii++) {
      const Vector2d pos(last(ii * kUnicycleStateDim + kPosX),
                         last(ii * kUnicycleStateDim + kPosY));
      m.goal_distance[ii] = (pos - config.players[ii].weights.goal).norm();
    }
  }
  for (double d : m.lane_deviation) m.max_lane_deviation = std::max(m.max_lane_deviation, d);
  if (!trajectory.occluded.empty())
    m.occluded_fraction =
        static_cast<double>(std::count(trajectory.occluded.begin(),
                                       trajectory.occluded.end(), true)) /
        trajectory.occluded.size();
  if (n < 2) m.min_center_distance = 0.0;
  return m;
}

RunResult RunScenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const NonlinearProblem problem = BuildProblem(config);

  OcclusionDetector detector;
  switch (config.mode) {
    case RunMode::kHybrid:
      detector = VisibilityDetector(BuildOcclusionQuery(config));
      break;
    case RunMode::kOpenLoop:
      detector = ForcedModeDetector(config.horizon, InformationMode::kOpenLoop);
      break;
    case RunMode::kFeedback:
      detector = ForcedModeDetector(config.horizon, InformationMode::kFeedback);
      break;
  }

  OGSolveResult solve = OGSolve(problem, detector, config.solver);

  RunResult result;
  RunReport& report = result.report;
  report.scenario = config.name;
  report.mode = config.mode;
  report.seed = config.seed;
  report.converged = solve.converged;
  report.iterations = solve.iterations;
  report.failure = solve.failure;
  report.occluded = solve.trajectory.occluded;
  report.metrics = ComputeMetrics(solve.trajectory, config);
  result.trajectory = std::move(solve.trajectory);
  result.log = std::move(solve.log);
  report.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ComparisonReport CompareStructures(const ScenarioConfig& config) {
  constexpr std::array<RunMode, 3> kModes = {RunMode::kHybrid, RunMode::kOpenLoop,
                                             RunMode::kFeedback};
  std::array<std::future<RunResult>, 3> futures;
  for (std::size_t kk = 0; kk < kModes.size(); kk++) {
    ScenarioConfig mode_config = config;
    mode_config.mode = kModes[kk];
    futures[kk] = std::async(std::launch::async, [mode_config]() {
      try {
        return RunScenario(mode_config);
      } catch (const std::exception& e) {
        RunResult failed;
        failed.report.scenario = mode_config.name;
        failed.report.mode = mode_config.mode;
        failed.report.seed = mode_config.seed;
        failed.report.failure = e.what();
        return failed;
      }
    });
  }

  ComparisonReport comparison;
  for (std::size_t kk = 0; kk < kModes.size(); kk++) comparison.runs[kk] = futures[kk].get();

  const double hybrid = comparison.Run(RunMode::kHybrid).report.metrics.max_lane_deviation;
  const double openloop =
      comparison.Run(RunMode::kOpenLoop).report.metrics.max_lane_deviation;
  const double feedback =
      comparison.Run(RunMode::kFeedback).report.metrics.max_lane_deviation;
  comparison.lane_deviation_delta_openloop = openloop - hybrid;
  comparison.lane_deviation_delta_feedback = feedback - hybrid;
  comparison.hybrid_lane_keeping_no_worse_than_openloop = hybrid <= openloop;
  return comparison;
}

}  // namespace hybrid_games
