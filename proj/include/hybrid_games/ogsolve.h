#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Iterative occlusion-aware game solver. Starting from an initial control
// sequence, each iteration
//
//   1. linearizes the dynamics and quadraticizes the costs about the current
//      trajectory iterate, giving an LQ game in the deviations (dx, du),
//   2. finds which stages are occluded and partitions the horizon into
//      open-loop and feedback periods,
//   3. solves the deviation game under that hybrid information structure,
//   4. rolls the nonlinear dynamics forward under the resulting strategies,
//      scaling the feed-forward part of the update by the step size eta,
//
// until neither the states nor the controls change by more than the
// configured tolerances.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/driving_cost.h>
#include <hybrid_games/dynamics.h>
#include <hybrid_games/information_schedule.h>
#include <hybrid_games/lq_game.h>
#include <hybrid_games/lq_hybrid_solver.h>
#include <hybrid_games/trajectory.h>
#include <hybrid_games/visibility.h>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hybrid_games {

struct SolverSettings {
  double eta = 0.1;
  int max_iterations = 500;
  double state_tolerance = 1e-2;
  double control_tolerance = 1e-2;
  double control_regularization = 1e-3;  // added to each R^{ii}
  double hessian_floor = 0.0;            // eigenvalue floor for Q^i
  int max_backoffs = 10;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

struct NonlinearProblem {
  std::shared_ptr<const MultiPlayerDynamics> dynamics;
  std::shared_ptr<const GameCost> cost;
  int horizon = 0;
  double dt = 0.1;
  VectorXd x0;
  // Empty means all-zero controls.
  ControlSequence initial_controls;

  std::size_t NumPlayers() const { return dynamics->NumPlayers(); }
  void Validate() const;
};

// Rolls out a fixed control sequence. Throws SolverError at the first stage
// whose state is non-finite.
TrajectoryIterate GetTrajectory(const NonlinearProblem& problem,
                                const ControlSequence& controls);

// Hybrid strategy in deviation coordinates about a nominal iterate.
struct HybridStrategy {
  TrajectoryIterate nominal;
  LQGame deviation_game;
  HybridSolution solution;
  // For each open-loop period, its controls from a zero entry deviation; the
  // feed-forward part that the step size scales. Empty for feedback periods.
  std::vector<ControlSequence> feedforward;
};

HybridStrategy MakeStrategy(TrajectoryIterate nominal, LQGame deviation_game,
                            HybridSolution solution);

// Rolls out the nonlinear dynamics under a hybrid strategy.
//   feedback stages:   u = u_hat - P dx - eta alpha
//   open-loop stages:  u = u_hat + eta ff + (ol(dx_entry) - ff)
// where ol(dx_entry) are the period's open-loop controls regenerated at the
// realized entry deviation. With eta = 1 both reduce to the LQ strategies.
// Throws SolverError on a non-finite state.
TrajectoryIterate GetTrajectory(const NonlinearProblem& problem,
                                const HybridStrategy& strategy, double eta);

std::vector<LinearDynamicsStage> LinearizeDynamics(
    const NonlinearProblem& problem, const TrajectoryIterate& trajectory);

// Gradients and Hessians of every player's running cost. State Hessians are
// symmetrized and eigenvalue-clamped at the floor when they dip below it;
// own-control Hessians get the regularization added.
std::vector<QuadraticCostStage> QuadraticizeCosts(
    const NonlinearProblem& problem, const TrajectoryIterate& trajectory,
    const SolverSettings& settings);

StageControls StepToward(const StageControls& controls,
                         const StageControls& deltas, double eta);

struct ConvergenceDiagnostics {
  bool converged = false;
  double state_change = 0.0;
  double control_change = 0.0;
  int argmax_stage = 0;  // stage of the largest state change

  bool operator==(const ConvergenceDiagnostics&) const = default;
};

ConvergenceDiagnostics CheckConvergence(const TrajectoryIterate& previous,
                                        const TrajectoryIterate& next,
                                        const SolverSettings& settings);

// Per-player accumulated running cost.
std::vector<double> TrajectoryCosts(const NonlinearProblem& problem,
                                    const TrajectoryIterate& trajectory);

// Per-stage occlusion flags for the current iterate.
using OcclusionDetector =
    std::function<std::vector<bool>(const TrajectoryIterate&)>;

OcclusionDetector VisibilityDetector(OcclusionQuery query);
// Ignores the trajectory. Never touches the visibility code.
OcclusionDetector FixedDetector(std::vector<bool> flags);
OcclusionDetector ForcedModeDetector(int horizon, InformationMode mode);

struct IterationRecord {
  int iteration = 0;
  InformationSchedule schedule;
  double eta = 0.0;  // step size actually used
  int backoffs = 0;
  ConvergenceDiagnostics diagnostics;
  std::vector<double> costs;  // of the new iterate

  bool operator==(const IterationRecord& other) const;
};

struct OGSolveResult {
  TrajectoryIterate trajectory;  // occluded flags recomputed on it
  bool converged = false;
  int iterations = 0;
  std::vector<IterationRecord> log;
  std::string failure;  // empty on success
};

// Never throws for solver failures; they are reported in |failure| together
// with the best iterate seen (smallest normalized change).
OGSolveResult OGSolve(const NonlinearProblem& problem,
                      const OcclusionDetector& detector,
                      const SolverSettings& settings);

}  // namespace hybrid_games
