#include <hybrid_games/ogsolve.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hybrid_games {

namespace {

bool IsFinite(const VectorXd& v) { return v.allFinite(); }

void CheckFinite(const VectorXd& x, int stage) {
  if (!IsFinite(x))
    throw SolverError("non-finite state in rollout", stage);
}

MatrixXd ClampEigenvalues(const MatrixXd& hess, double floor) {
  const MatrixXd sym = 0.5 * (hess + hess.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym);
  if (eig.eigenvalues().minCoeff() >= floor) return sym;
  const VectorXd clamped = eig.eigenvalues().cwiseMax(floor);
  return eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
}

double NormalizedChange(const ConvergenceDiagnostics& d,
                        const SolverSettings& settings) {
  return std::max(d.state_change / settings.state_tolerance,
                  d.control_change / settings.control_tolerance);
}

}  // namespace

void SolverSettings::Validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations");
  if (!(state_tolerance > 0.0)) throw std::invalid_argument("state_tolerance");
  if (!(control_tolerance > 0.0)) throw std::invalid_argument("control_tolerance");
  if (!(control_regularization >= 0.0))
    throw std::invalid_argument("control_regularization");
  if (!(hessian_floor >= 0.0)) throw std::invalid_argument("hessian_floor");
  if (max_backoffs < 0) throw std::invalid_argument("max_backoffs");
}

void NonlinearProblem::Validate() const {
  if (!dynamics) throw std::invalid_argument("dynamics");
  if (!cost) throw std::invalid_argument("cost");
  if (!(dt > 0.0)) throw std::invalid_argument("dt");
  if (horizon < 2) throw std::invalid_argument("horizon");
  if (x0.size() != dynamics->StateDim()) throw std::invalid_argument("x0");
  if (cost->NumPlayers() != dynamics->NumPlayers())
    throw std::invalid_argument("cost");
  if (!initial_controls.empty()) {
    if (static_cast<int>(initial_controls.size()) != horizon)
      throw std::invalid_argument("initial_controls");
    const auto udims = dynamics->ControlDims();
    for (const auto& us : initial_controls) {
      if (us.size() != udims.size()) throw std::invalid_argument("initial_controls");
      for (PlayerIndex ii = 0; ii < us.size(); ii++)
        if (us[ii].size() != udims[ii]) throw std::invalid_argument("initial_controls");
    }
  }
}

TrajectoryIterate GetTrajectory(const NonlinearProblem& problem,
                                const ControlSequence& controls) {
  TrajectoryIterate traj;
  traj.controls = controls;
  traj.occluded.assign(problem.horizon, false);
  VectorXd x = problem.x0;
  for (int kk = 0; kk < problem.horizon; kk++) {
    CheckFinite(x, kk);
    traj.states.push_back(x);
    if (kk + 1 < problem.horizon) x = problem.dynamics->Step(kk, x, controls[kk]);
  }
  return traj;
}

HybridStrategy MakeStrategy(TrajectoryIterate nominal, LQGame deviation_game,
                            HybridSolution solution) {
  HybridStrategy strategy{std::move(nominal), std::move(deviation_game),
                          std::move(solution), {}};
  const auto& sol = strategy.solution;
  const VectorXd zero = VectorXd::Zero(strategy.deviation_game.StateDim());
  for (std::size_t jj = 0; jj < sol.periods.size(); jj++) {
    if (const auto* ol = sol.OpenLoopPeriod(jj))
      strategy.feedforward.push_back(
          OpenLoopControls(strategy.deviation_game, *ol, zero).controls);
    else
      strategy.feedforward.emplace_back();
  }
  return strategy;
}

TrajectoryIterate GetTrajectory(const NonlinearProblem& problem,
                                const HybridStrategy& strategy, double eta) {
  const auto& nominal = strategy.nominal;
  const auto& sol = strategy.solution;
  const std::size_t num_players = problem.NumPlayers();

  TrajectoryIterate traj;
  traj.occluded = FlattenSchedule(sol.schedule);
  VectorXd x = problem.x0;
  ControlSequence period_controls;  // open-loop controls of the current period
  for (int kk = 0; kk < problem.horizon; kk++) {
    CheckFinite(x, kk);
    traj.states.push_back(x);
    const VectorXd dx = x - nominal.states[kk];
    const int jj = sol.schedule.PeriodOf(kk);
    const Period& period = sol.schedule.periods[jj];
    const StageControls& u_hat = nominal.controls[kk];

    StageControls us(num_players);
    if (const auto* fb = sol.FeedbackPeriod(jj)) {
      const auto& stage = fb->stages[kk - period.first];
      StageControls tracking(num_players), offsets(num_players);
      for (PlayerIndex ii = 0; ii < num_players; ii++) {
        tracking[ii] = u_hat[ii] - stage.gains[ii] * dx;
        offsets[ii] = -stage.offsets[ii];
      }
      us = StepToward(tracking, offsets, eta);
    } else {
      if (kk == period.first)
        period_controls =
            OpenLoopControls(strategy.deviation_game, *sol.OpenLoopPeriod(jj), dx)
                .controls;
      const StageControls& ff = strategy.feedforward[jj][kk - period.first];
      const StageControls& full = period_controls[kk - period.first];
      StageControls tracking(num_players);
      for (PlayerIndex ii = 0; ii < num_players; ii++)
        tracking[ii] = u_hat[ii] + full[ii] - ff[ii];
      us = StepToward(tracking, ff, eta);
    }
    for (const auto& u : us)
      if (!IsFinite(u)) throw SolverError("non-finite control in rollout", kk);
    traj.controls.push_back(us);
    if (kk + 1 < problem.horizon) x = problem.dynamics->Step(kk, x, us);
  }
  return traj;
}

std::vector<LinearDynamicsStage> LinearizeDynamics(
    const NonlinearProblem& problem, const TrajectoryIterate& trajectory) {
  std::vector<LinearDynamicsStage> stages;
  stages.reserve(trajectory.Horizon());
  for (int kk = 0; kk < trajectory.Horizon(); kk++)
    stages.push_back(problem.dynamics->Linearize(kk, trajectory.states[kk],
                                                 trajectory.controls[kk]));
  return stages;
}

std::vector<QuadraticCostStage> QuadraticizeCosts(
    const NonlinearProblem& problem, const TrajectoryIterate& trajectory,
    const SolverSettings& settings) {
  const std::size_t num_players = problem.NumPlayers();
  std::vector<QuadraticCostStage> stages(trajectory.Horizon());
  for (int kk = 0; kk < trajectory.Horizon(); kk++) {
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      PlayerStageCost c = problem.cost->Quadraticize(
          ii, kk, trajectory.states[kk], trajectory.controls[kk]);
      c.state_hess = ClampEigenvalues(c.state_hess, settings.hessian_floor);
      for (auto& R : c.control_hess) R = 0.5 * (R + R.transpose());
      c.control_hess[ii] += settings.control_regularization *
                            MatrixXd::Identity(c.control_hess[ii].rows(),
                                               c.control_hess[ii].cols());
      stages[kk].players.push_back(std::move(c));
    }
  }
  return stages;
}

StageControls StepToward(const StageControls& controls,
                         const StageControls& deltas, double eta) {
  StageControls out(controls.size());
  for (PlayerIndex ii = 0; ii < controls.size(); ii++)
    out[ii] = controls[ii] + eta * deltas[ii];
  return out;
}

ConvergenceDiagnostics CheckConvergence(const TrajectoryIterate& previous,
                                        const TrajectoryIterate& next,
                                        const SolverSettings& settings) {
  ConvergenceDiagnostics d;
  d.state_change = MaxStateChange(previous, next, &d.argmax_stage);
  d.control_change = MaxControlChange(previous, next);
  d.converged = d.state_change < settings.state_tolerance &&
                d.control_change < settings.control_tolerance;
  return d;
}

std::vector<double> TrajectoryCosts(const NonlinearProblem& problem,
                                    const TrajectoryIterate& trajectory) {
  std::vector<double> costs(problem.NumPlayers(), 0.0);
  for (int kk = 0; kk < trajectory.Horizon(); kk++)
    for (PlayerIndex ii = 0; ii < costs.size(); ii++)
      costs[ii] += problem.cost->Evaluate(ii, kk, trajectory.states[kk],
                                          trajectory.controls[kk]);
  return costs;
}

OcclusionDetector VisibilityDetector(OcclusionQuery query) {
  return [query = std::move(query)](const TrajectoryIterate& traj) {
    return OcclusionFlags(traj, query);
  };
}

OcclusionDetector FixedDetector(std::vector<bool> flags) {
  return [flags = std::move(flags)](const TrajectoryIterate&) { return flags; };
}

OcclusionDetector ForcedModeDetector(int horizon, InformationMode mode) {
  return FixedDetector(
      std::vector<bool>(horizon, mode == InformationMode::kOpenLoop));
}

bool IterationRecord::operator==(const IterationRecord& other) const {
  return iteration == other.iteration &&
         FlattenSchedule(schedule) == FlattenSchedule(other.schedule) &&
         eta == other.eta && backoffs == other.backoffs &&
         diagnostics == other.diagnostics && costs == other.costs;
}

OGSolveResult OGSolve(const NonlinearProblem& problem,
                      const OcclusionDetector& detector,
                      const SolverSettings& settings) {
  problem.Validate();
  settings.Validate();

  OGSolveResult result;
  const ControlSequence initial =
      problem.initial_controls.empty()
          ? ZeroControls(problem.horizon, problem.dynamics->ControlDims())
          : problem.initial_controls;

  TrajectoryIterate current;
  try {
    current = GetTrajectory(problem, initial);
  } catch (const SolverError& e) {
    result.failure = std::string("initial rollout: ") + e.what();
    return result;
  }

  TrajectoryIterate best = current;
  double best_change = std::numeric_limits<double>::infinity();
  auto finish = [&](TrajectoryIterate traj) {
    traj.occluded = detector(traj);
    result.trajectory = std::move(traj);
    return result;
  };

  for (int iter = 1; iter <= settings.max_iterations; iter++) {
    IterationRecord record;
    record.iteration = iter;

    LQGame game{LinearizeDynamics(problem, current),
                QuadraticizeCosts(problem, current, settings)};
    current.occluded = detector(current);
    record.schedule = PartitionFromFlags(current.occluded);

    TrajectoryIterate next;
    try {
      HybridSolution sol = SolveLQHybrid(game, record.schedule);
      const HybridStrategy strategy =
          MakeStrategy(current, std::move(game), std::move(sol));

      double eta = settings.eta;
      for (int backoff = 0;; backoff++) {
        try {
          next = GetTrajectory(problem, strategy, eta);
          record.eta = eta;
          record.backoffs = backoff;
          break;
        } catch (const SolverError&) {
          if (backoff >= settings.max_backoffs) throw;
          eta *= 0.5;
        }
      }
    } catch (const SolverError& e) {
      result.iterations = iter;
      result.failure = "iteration " + std::to_string(iter) + ": " + e.what();
      return finish(best);
    }

    record.diagnostics = CheckConvergence(current, next, settings);
    record.costs = TrajectoryCosts(problem, next);
    result.log.push_back(record);
    result.iterations = iter;

    const double change = NormalizedChange(record.diagnostics, settings);
    if (change < best_change) {
      best_change = change;
      best = next;
    }
    current = std::move(next);
    if (record.diagnostics.converged) {
      result.converged = true;
      return finish(std::move(current));
    }
  }

  // With a zero budget |best| is still the initial trajectory.
  result.failure = "iteration budget exhausted";
  return finish(std::move(best));
}

}  // namespace hybrid_games
