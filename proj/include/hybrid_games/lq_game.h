#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Data model for a finite-horizon N-player linear-quadratic game.
//
// Stage t (0-based) has dynamics
//           x_{t+1} = A_t x_t + \sum_j Bs[j]_t u^j_t
// and player i pays
//   0.5 x^T state_hess x + state_grad^T x
//     + \sum_j 0.5 u^jT control_hess[j] u^j + control_grad[j]^T u^j.
//
// The state after the last stage carries no cost of its own; any terminal
// penalty is folded into the last stage's state cost. Every period solver
// receives its boundary condition as a CostToGo valid one index past the end
// of the period, and the final period receives CostToGo::Zero.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/types.h>

#include <string>
#include <vector>

namespace hybrid_games {

struct LinearDynamicsStage {
  MatrixXd A;
  std::vector<MatrixXd> Bs;  // Bs[i] maps player i's control into the state.
};

struct PlayerStageCost {
  MatrixXd state_hess;
  VectorXd state_grad;
  std::vector<MatrixXd> control_hess;  // indexed by the controlling player
  std::vector<VectorXd> control_grad;
};

struct QuadraticCostStage {
  std::vector<PlayerStageCost> players;
};

struct LQGame {
  std::vector<LinearDynamicsStage> dynamics;
  std::vector<QuadraticCostStage> costs;

  int Horizon() const { return static_cast<int>(dynamics.size()); }
  std::size_t NumPlayers() const { return dynamics.front().Bs.size(); }
  Dimension StateDim() const { return dynamics.front().A.rows(); }
  Dimension ControlDim(PlayerIndex ii) const {
    return dynamics.front().Bs[ii].cols();
  }
  Dimension TotalControlDim() const;
  std::vector<Dimension> ControlDims() const;
};

// Quadratic function 0.5 x^T hess x + grad^T x + constant.
struct QuadraticValue {
  MatrixXd hess;
  VectorXd grad;
  double constant = 0.0;

  double Evaluate(const VectorXd& x) const {
    return 0.5 * x.dot(hess * x) + grad.dot(x) + constant;
  }
};

// Per-player boundary value handed from one period to the one before it.
struct CostToGo {
  std::vector<QuadraticValue> players;

  static CostToGo Zero(std::size_t num_players, Dimension xdim);
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

// Reports every dimensional mismatch, asymmetric cost matrix (beyond 1e-12)
// and non-positive-definite own-control Hessian. Never throws.
ValidationReport ValidateLQGame(const LQGame& game);

// Stage cost of one player.
double StageCost(const PlayerStageCost& cost, const VectorXd& x,
                 const StageControls& us);

}  // namespace hybrid_games
