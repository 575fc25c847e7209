#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Open-loop Nash solver for one period of an LQ game. Works backward from a
// boundary CostToGo valid just past the period's last stage, computing the
// costate recursion
//
//   coupling_t   = I + \sum_j B^j R^{jj}^{-1} B^jT M^j_{t+1}
//   M^i_t        = Q^i_t + A_t^T M^i_{t+1} coupling_t^{-1} A_t
//   m^i_t        = q^i_t + A_t^T [m^i_{t+1} - M^i_{t+1} coupling_t^{-1}
//                         \sum_j B^j R^{jj}^{-1} (B^jT m^j_{t+1} + r^{jj})]
//
// where the costate of player i at stage t is M^i_{t+1} x_{t+1} + m^i_{t+1}.
// Note that for more than one player M^i is not symmetric in general.
//
// The open-loop equilibrium from a given entry state is then recovered by a
// forward pass (OpenLoopControls).
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/information_schedule.h>
#include <hybrid_games/lq_game.h>

#include <vector>

namespace hybrid_games {

struct OpenLoopValueStage {
  std::vector<MatrixXd> value_hess;  // M^i
  std::vector<VectorXd> value_grad;  // m^i
  // The coupling matrix and the affine drift term that multiply the next
  // state in the forward pass.
  MatrixXd coupling;
  VectorXd drift;
};

struct OpenLoopPeriodSolution {
  Period period;
  // stages[k] holds the values at stage period.first + k.
  std::vector<OpenLoopValueStage> stages;
  CostToGo terminal;
  std::vector<MatrixXd> terminal_hess;  // unpacked from |terminal|
  std::vector<VectorXd> terminal_grad;

  // Values one index past |stage|: either the next stored stage or the
  // terminal boundary.
  const std::vector<MatrixXd>& NextHess(int stage) const;
  const std::vector<VectorXd>& NextGrad(int stage) const;

  // Boundary value at the start of the period. Hessians are symmetrized; the
  // constant of the terminal boundary is carried through unchanged.
  CostToGo EntryCostToGo() const;
};

struct OpenLoopTrajectory {
  ControlSequence controls;     // one entry per stage of the period
  std::vector<VectorXd> states;  // period length + 1, starting at the entry
};

// Reciprocal condition estimate below which a coupling matrix is rejected.
inline constexpr double kMinReciprocalCondition = 1e-12;

// Throws SolverError (with stage) if a coupling matrix is singular or an
// own-control Hessian is not positive definite.
OpenLoopPeriodSolution SolveLQOpenLoop(const LQGame& game, const Period& period,
                                       const CostToGo& terminal);

OpenLoopTrajectory OpenLoopControls(const LQGame& game,
                                    const OpenLoopPeriodSolution& solution,
                                    const VectorXd& x_entry);

}  // namespace hybrid_games
