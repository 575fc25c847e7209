#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Driving scenario configuration, read from TOML:
//
//   [game]        horizon, dt, mode, seed, interacting_pairs, agent_occluders,
//                 samples_per_edge, lane_half_width, proximity_threshold
//   [game.jitter] longitudinal, lateral, speed   (uniform half-ranges)
//   [[players]]   name, initial_state, length, width, initial_control,
//                 crossing, [players.cost]
//   [[occluders]] center, length, width, heading
//   [solver]      eta, max_iterations, state_tolerance, control_tolerance,
//                 control_regularization, hessian_floor, max_backoffs
//
// Player indices are 0-based. Unknown keys are rejected.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/driving_cost.h>
#include <hybrid_games/dynamics.h>
#include <hybrid_games/geometry.h>
#include <hybrid_games/ogsolve.h>
#include <hybrid_games/visibility.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybrid_games {

enum class RunMode { kHybrid, kOpenLoop, kFeedback };

std::string ToString(RunMode mode);
// Throws std::invalid_argument on anything but hybrid|openloop|feedback.
RunMode ParseRunMode(const std::string& name);

// Half-plane boundary; a player has crossed once (p - point) . normal >= 0.
struct CrossingLine {
  Vector2d point = Vector2d::Zero();
  Vector2d normal = Vector2d::UnitX();

  bool Crossed(const Vector2d& p) const { return (p - point).dot(normal) >= 0.0; }
};

struct PlayerConfig {
  std::string name;
  UnicycleVector initial_state = UnicycleVector::Zero();
  RectangleShape shape;
  CostWeights weights;
  Vector2d initial_control = Vector2d::Zero();  // held constant over the horizon
  std::optional<CrossingLine> crossing;
};

struct JitterRanges {
  double longitudinal = 0.0;  // along the initial heading, meters
  double lateral = 0.0;
  double speed = 0.0;  // m/s
};

struct ScenarioConfig {
  std::string name;
  int horizon = 100;
  double dt = 0.1;
  RunMode mode = RunMode::kHybrid;
  std::uint64_t seed = 0;  // 0 disables jitter
  JitterRanges jitter;

  std::vector<PlayerConfig> players;
  std::vector<OrientedRectangle> static_occluders;
  std::vector<PlayerIndex> agent_occluders;
  std::vector<PlayerPair> interacting_pairs;  // empty means all pairs
  int samples_per_edge = kDefaultSamplesPerEdge;

  // Defaults that players inherit unless their cost table overrides them.
  double lane_half_width = kDefaultLaneHalfWidth;
  double proximity_threshold = kDefaultProximityThreshold;

  SolverSettings solver;

  std::size_t NumPlayers() const { return players.size(); }

  // Throws ScenarioError with a field path.
  void Validate() const;
};

// Parse errors carry the line, semantic errors the offending field path
// (e.g. "[game].dt").
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, std::string field, int line = 0);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

ScenarioConfig LoadScenario(const std::string& path);
ScenarioConfig ParseScenario(const std::string& toml_text,
                             const std::string& source = "<string>");

// Initial state with the seeded jitter applied (identity for seed 0).
VectorXd InitialState(const ScenarioConfig& config);

NonlinearProblem BuildProblem(const ScenarioConfig& config);
OcclusionQuery BuildOcclusionQuery(const ScenarioConfig& config);

}  // namespace hybrid_games
