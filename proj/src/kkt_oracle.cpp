#include <hybrid_games/kkt_oracle.h>

#include <Eigen/LU>

namespace hybrid_games {

KKTOracleSystem AssembleKKTSystem(const LQGame& game, const VectorXd& x0,
                                  const CostToGo* terminal) {
  const int horizon = game.Horizon();
  const std::size_t num_players = game.NumPlayers();
  const Dimension xdim = game.StateDim();
  const Dimension udim = game.TotalControlDim();

  KKTOracleSystem sys;
  sys.state_offset = 0;
  sys.control_offset = horizon * xdim;
  sys.costate_offset = sys.control_offset + horizon * udim;
  const Dimension size = sys.costate_offset + horizon * num_players * xdim;
  sys.matrix = MatrixXd::Zero(size, size);
  sys.rhs = VectorXd::Zero(size);

  sys.player_control_offsets.resize(num_players);
  Dimension offset = 0;
  for (PlayerIndex ii = 0; ii < num_players; ii++) {
    sys.player_control_offsets[ii] = offset;
    offset += game.ControlDim(ii);
  }

  // Column of x_t for t >= 1, of u^i_t and of lambda^i_t.
  auto x_col = [&](int t) { return sys.state_offset + (t - 1) * xdim; };
  auto u_col = [&](int t, PlayerIndex ii) {
    return sys.control_offset + t * udim + sys.player_control_offsets[ii];
  };
  auto lambda_col = [&](int t, PlayerIndex ii) {
    return sys.costate_offset + (t * num_players + ii) * xdim;
  };

  auto& K = sys.matrix;
  Dimension row = 0;

  // Dynamics: x_{t+1} - A_t x_t - sum_j B^j_t u^j_t = 0.
  for (int t = 0; t < horizon; t++) {
    const auto& lin = game.dynamics[t];
    K.block(row, x_col(t + 1), xdim, xdim).setIdentity();
    if (t == 0) {
      sys.rhs.segment(row, xdim) = lin.A * x0;
    } else {
      K.block(row, x_col(t), xdim, xdim) = -lin.A;
    }
    for (PlayerIndex jj = 0; jj < num_players; jj++)
      K.block(row, u_col(t, jj), xdim, game.ControlDim(jj)) = -lin.Bs[jj];
    row += xdim;
  }

  // Stationarity in u^i_t: R^{ii} u^i_t + r^{ii} + B^iT lambda^i_t = 0.
  for (int t = 0; t < horizon; t++) {
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      const Dimension m = game.ControlDim(ii);
      const auto& cost = game.costs[t].players[ii];
      K.block(row, u_col(t, ii), m, m) = cost.control_hess[ii];
      K.block(row, lambda_col(t, ii), m, xdim) =
          game.dynamics[t].Bs[ii].transpose();
      sys.rhs.segment(row, m) = -cost.control_grad[ii];
      row += m;
    }
  }

  // Stationarity in x_t, t = 1..T:
  //   Q^i_t x_t + q^i_t + A_t^T lambda^i_t - lambda^i_{t-1} = 0,
  // with the terminal cost in place of the stage cost at t = T.
  for (int t = 1; t <= horizon; t++) {
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      if (t < horizon) {
        const auto& cost = game.costs[t].players[ii];
        K.block(row, x_col(t), xdim, xdim) = cost.state_hess;
        K.block(row, lambda_col(t, ii), xdim, xdim) =
            game.dynamics[t].A.transpose();
        sys.rhs.segment(row, xdim) = -cost.state_grad;
      } else if (terminal) {
        const auto& v = terminal->players[ii];
        K.block(row, x_col(t), xdim, xdim) = 0.5 * (v.hess + v.hess.transpose());
        sys.rhs.segment(row, xdim) = -v.grad;
      }
      K.block(row, lambda_col(t - 1, ii), xdim, xdim) =
          -MatrixXd::Identity(xdim, xdim);
      row += xdim;
    }
  }
  return sys;
}

OpenLoopEquilibrium SolveKKTOracle(const LQGame& game, const VectorXd& x0,
                                   const CostToGo* terminal) {
  const KKTOracleSystem sys = AssembleKKTSystem(game, x0, terminal);
  Eigen::FullPivLU<MatrixXd> lu(sys.matrix);
  if (!lu.isInvertible())
    throw SolverError("KKT system is singular: no unique open-loop equilibrium");
  const VectorXd z = lu.solve(sys.rhs);

  const int horizon = game.Horizon();
  const std::size_t num_players = game.NumPlayers();
  const Dimension xdim = game.StateDim();
  const Dimension udim = game.TotalControlDim();

  OpenLoopEquilibrium eq;
  eq.residual = (sys.matrix * z - sys.rhs).lpNorm<Eigen::Infinity>();
  eq.states.push_back(x0);
  for (int t = 1; t <= horizon; t++)
    eq.states.push_back(z.segment(sys.state_offset + (t - 1) * xdim, xdim));
  for (int t = 0; t < horizon; t++) {
    StageControls us;
    std::vector<VectorXd> lambdas;
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      us.push_back(z.segment(
          sys.control_offset + t * udim + sys.player_control_offsets[ii],
          game.ControlDim(ii)));
      lambdas.push_back(z.segment(
          sys.costate_offset + (t * num_players + ii) * xdim, xdim));
    }
    eq.controls.push_back(std::move(us));
    eq.costates.push_back(std::move(lambdas));
  }
  return eq;
}

}  // namespace hybrid_games
