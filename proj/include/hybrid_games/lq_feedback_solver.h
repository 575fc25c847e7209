#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Feedback Nash solver for one period of an LQ game (coupled Riccati
// recursion). Each player's strategy is u^i_t = -P^i_t x_t - alpha^i_t. At
// every stage the players' first-order conditions are stacked into one
// (sum_i m_i) x (sum_i m_i) system
//
//   (R^{ii} + B^iT Z^i B^i) P^i + B^iT Z^i sum_{j != i} B^j P^j = B^iT Z^i A
//
// (same left-hand side for alpha with right-hand side B^iT zeta^i + r^{ii}),
// after which each player's quadratic value function is propagated through
// the closed-loop dynamics F = A - sum_j B^j P^j, beta = -sum_j B^j alpha^j.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/information_schedule.h>
#include <hybrid_games/lq_game.h>

#include <vector>

namespace hybrid_games {

struct FeedbackValueStage {
  std::vector<QuadraticValue> values;  // (Z^i, zeta^i, n^i) at this stage
  std::vector<MatrixXd> gains;         // P^i
  std::vector<VectorXd> offsets;       // alpha^i
};

struct FeedbackPeriodSolution {
  Period period;
  std::vector<FeedbackValueStage> stages;  // stages[k] is period.first + k
  CostToGo terminal;

  CostToGo EntryCostToGo() const;

  StageControls Controls(int stage, const VectorXd& x) const;
};

// Throws SolverError (with stage) if the stacked system is singular, or if a
// value Hessian drifts from symmetry by more than roundoff before it is
// re-symmetrized.
FeedbackPeriodSolution SolveLQFeedback(const LQGame& game, const Period& period,
                                       const CostToGo& terminal);

}  // namespace hybrid_games
