#pragma once

// Dense reference solver for open-loop Nash equilibria. Rather than running
// the backward costate recursion, it writes down every player's first-order
// optimality conditions together with the dynamics and solves the whole
// stacked linear system at once. Intended for verification on small games.

#include <hybrid_games/lq_game.h>

#include <vector>

namespace hybrid_games {

// Unknowns are stacked as [x_1..x_T | u_0..u_{T-1} (all players per stage) |
// lambda^1..lambda^N per stage]; the state x_0 is given.
struct KKTOracleSystem {
  MatrixXd matrix;
  VectorXd rhs;
  Dimension state_offset = 0;
  Dimension control_offset = 0;
  Dimension costate_offset = 0;
  std::vector<Dimension> player_control_offsets;  // within one stage's block
};

struct OpenLoopEquilibrium {
  std::vector<VectorXd> states;  // x_0 .. x_T
  ControlSequence controls;      // per stage, per player
  std::vector<std::vector<VectorXd>> costates;  // per stage, per player
  double residual = 0.0;         // max-abs residual of the stacked system
};

// |terminal| (optional) adds 0.5 x_T^T S^i x_T + s^iT x_T to player i's cost.
KKTOracleSystem AssembleKKTSystem(const LQGame& game, const VectorXd& x0,
                                  const CostToGo* terminal = nullptr);

// Throws SolverError if the stacked system is singular, meaning the game has
// no unique open-loop equilibrium.
OpenLoopEquilibrium SolveKKTOracle(const LQGame& game, const VectorXd& x0,
                                   const CostToGo* terminal = nullptr);

}  // namespace hybrid_games
