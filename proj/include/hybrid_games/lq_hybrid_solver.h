#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Hybrid-information LQ solver. The game is split into alternating open-loop
// (occluded) and feedback (visible) periods. Periods are solved from last to
// first; each period takes as its terminal cost the cost-to-go at the start
// of the period that follows it, so every period reasons about the
// information structure of the rest of the game. The final period is seeded
// with a zero cost-to-go.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/information_schedule.h>
#include <hybrid_games/lq_feedback_solver.h>
#include <hybrid_games/lq_game.h>
#include <hybrid_games/lq_open_loop_solver.h>
#include <hybrid_games/trajectory.h>

#include <variant>
#include <vector>

namespace hybrid_games {

using PeriodSolution = std::variant<FeedbackPeriodSolution, OpenLoopPeriodSolution>;

struct HybridSolution {
  InformationSchedule schedule;
  std::vector<PeriodSolution> periods;  // parallel to schedule.periods
  // boundaries[j] is the cost-to-go valid just past period j; the last entry
  // is the all-zero terminal value.
  std::vector<CostToGo> boundaries;

  const FeedbackPeriodSolution* FeedbackPeriod(int jj) const {
    return std::get_if<FeedbackPeriodSolution>(&periods[jj]);
  }
  const OpenLoopPeriodSolution* OpenLoopPeriod(int jj) const {
    return std::get_if<OpenLoopPeriodSolution>(&periods[jj]);
  }

  // Cost-to-go at the start of period jj (the value handed to period jj-1).
  CostToGo EntryCostToGo(int jj) const;
};

// Errors from the per-period solvers are rethrown with the period attached.
HybridSolution SolveLQHybrid(const LQGame& game,
                             const InformationSchedule& schedule);

// Plays the hybrid strategies forward from x_0. Feedback stages apply
// u = -P x - alpha at the realized state; on entering an open-loop period
// the whole period's control sequence is generated once from the realized
// entry state and then applied without further state feedback.
TrajectoryIterate RolloutHybrid(const LQGame& game,
                                const HybridSolution& solution,
                                const VectorXd& x0);

// Per-player accumulated stage cost along a trajectory.
std::vector<double> TrajectoryCosts(const LQGame& game,
                                    const TrajectoryIterate& trajectory);

}  // namespace hybrid_games
