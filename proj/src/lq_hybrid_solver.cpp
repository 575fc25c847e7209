#include <hybrid_games/lq_hybrid_solver.h>

namespace hybrid_games {

CostToGo HybridSolution::EntryCostToGo(int jj) const {
  return std::visit([](const auto& period) { return period.EntryCostToGo(); },
                    periods[jj]);
}

HybridSolution SolveLQHybrid(const LQGame& game,
                             const InformationSchedule& schedule) {
  schedule.Validate(game.Horizon());

  const int num_periods = static_cast<int>(schedule.periods.size());
  HybridSolution solution;
  solution.schedule = schedule;
  solution.periods.resize(num_periods);
  solution.boundaries.resize(num_periods);

  CostToGo terminal = CostToGo::Zero(game.NumPlayers(), game.StateDim());
  for (int jj = num_periods - 1; jj >= 0; jj--) {
    const Period& period = schedule.periods[jj];
    solution.boundaries[jj] = terminal;
    try {
      if (period.mode == InformationMode::kFeedback) {
        auto solved = SolveLQFeedback(game, period, terminal);
        terminal = solved.EntryCostToGo();
        solution.periods[jj] = std::move(solved);
      } else {
        auto solved = SolveLQOpenLoop(game, period, terminal);
        terminal = solved.EntryCostToGo();
        solution.periods[jj] = std::move(solved);
      }
    } catch (const SolverError& e) {
      throw e.WithPeriod(jj);
    }
  }
  return solution;
}

TrajectoryIterate RolloutHybrid(const LQGame& game,
                                const HybridSolution& solution,
                                const VectorXd& x0) {
  TrajectoryIterate out;
  out.occluded = FlattenSchedule(solution.schedule);
  VectorXd x = x0;
  for (int jj = 0; jj < static_cast<int>(solution.periods.size()); jj++) {
    const Period& period = solution.schedule.periods[jj];
    if (const auto* fb = solution.FeedbackPeriod(jj)) {
      for (int kk = period.first; kk <= period.last; kk++) {
        StageControls us = fb->Controls(kk, x);
        out.states.push_back(x);
        VectorXd x_next = game.dynamics[kk].A * x;
        for (PlayerIndex ii = 0; ii < us.size(); ii++)
          x_next.noalias() += game.dynamics[kk].Bs[ii] * us[ii];
        out.controls.push_back(std::move(us));
        x = std::move(x_next);
      }
    } else {
      OpenLoopTrajectory ol;
      try {
        ol = OpenLoopControls(game, *solution.OpenLoopPeriod(jj), x);
      } catch (const SolverError& e) {
        throw e.WithPeriod(jj);
      }
      for (int kk = period.first; kk <= period.last; kk++) {
        const int offset = kk - period.first;
        out.states.push_back(ol.states[offset]);
        out.controls.push_back(ol.controls[offset]);
      }
      x = ol.states.back();
    }
  }
  return out;
}

std::vector<double> TrajectoryCosts(const LQGame& game,
                                    const TrajectoryIterate& trajectory) {
  std::vector<double> totals(game.NumPlayers(), 0.0);
  for (int kk = 0; kk < trajectory.Horizon(); kk++)
    for (PlayerIndex ii = 0; ii < totals.size(); ii++)
      totals[ii] += StageCost(game.costs[kk].players[ii], trajectory.states[kk],
                              trajectory.controls[kk]);
  return totals;
}

}  // namespace hybrid_games
