#include <hybrid_games/lq_feedback_solver.h>
#include <hybrid_games/lq_open_loop_solver.h>

#include <Eigen/LU>

#include <cassert>

namespace hybrid_games {

namespace {

// Relative asymmetry tolerated in a freshly propagated value Hessian.
constexpr double kAsymmetryTolerance = 1e-8;

}  // namespace

CostToGo FeedbackPeriodSolution::EntryCostToGo() const {
  return CostToGo{stages.front().values};
}

StageControls FeedbackPeriodSolution::Controls(int stage,
                                               const VectorXd& x) const {
  const auto& s = stages[stage - period.first];
  StageControls us(s.gains.size());
  for (PlayerIndex ii = 0; ii < us.size(); ii++)
    us[ii] = -s.gains[ii] * x - s.offsets[ii];
  return us;
}

FeedbackPeriodSolution SolveLQFeedback(const LQGame& game, const Period& period,
                                       const CostToGo& terminal) {
  const std::size_t num_players = game.NumPlayers();
  const Dimension xdim = game.StateDim();
  const Dimension total_udim = game.TotalControlDim();
  assert(terminal.players.size() == num_players);

  std::vector<Dimension> udim_starts(num_players + 1, 0);
  for (PlayerIndex ii = 0; ii < num_players; ii++)
    udim_starts[ii + 1] = udim_starts[ii] + game.ControlDim(ii);

  FeedbackPeriodSolution solution;
  solution.period = period;
  solution.terminal = terminal;
  solution.stages.resize(period.Length());

  // Stacked system S [Ps, alphas] = Y, solved for all players at once.
  MatrixXd S(total_udim, total_udim);
  MatrixXd Y(total_udim, xdim + 1);
  std::vector<MatrixXd> BiZi(num_players);

  MatrixXd X(total_udim, xdim + 1);
  MatrixXd F(xdim, xdim);
  MatrixXd ZF(xdim, xdim);
  MatrixXd RP;
  VectorXd beta(xdim);
  Eigen::PartialPivLU<MatrixXd> lu(total_udim);

  const std::vector<QuadraticValue>* next_values = &terminal.players;
  for (int kk = period.last; kk >= period.first; kk--) {
    const auto& lin = game.dynamics[kk];
    const auto& quad = game.costs[kk];
    auto& stage = solution.stages[kk - period.first];

    const auto& next = *next_values;
    for (PlayerIndex ii = 0; ii < num_players; ii++)
      BiZi[ii].noalias() = lin.Bs[ii].transpose() * next[ii].hess;

    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      const Dimension row = udim_starts[ii];
      const Dimension udim_ii = game.ControlDim(ii);
      for (PlayerIndex jj = 0; jj < num_players; jj++) {
        auto block = S.block(row, udim_starts[jj], udim_ii, game.ControlDim(jj));
        block.noalias() = BiZi[ii] * lin.Bs[jj];
        if (ii == jj) block += quad.players[ii].control_hess[ii];
      }
      Y.block(row, 0, udim_ii, xdim).noalias() = BiZi[ii] * lin.A;
      Y.col(xdim).segment(row, udim_ii) =
          lin.Bs[ii].transpose() * next[ii].grad +
          quad.players[ii].control_grad[ii];
    }

    lu.compute(S);
    if (!(lu.rcond() >= kMinReciprocalCondition))
      throw SolverError("coupled feedback system is singular", kk);
    X.noalias() = lu.solve(Y);

    stage.gains.resize(num_players);
    stage.offsets.resize(num_players);
    F = lin.A;
    beta.setZero();
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      const Dimension udim_ii = game.ControlDim(ii);
      stage.gains[ii] = X.block(udim_starts[ii], 0, udim_ii, xdim);
      stage.offsets[ii] = X.col(xdim).segment(udim_starts[ii], udim_ii);
      F.noalias() -= lin.Bs[ii] * stage.gains[ii];
      beta.noalias() -= lin.Bs[ii] * stage.offsets[ii];
    }

    stage.values.resize(num_players);
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      const auto& cost = quad.players[ii];
      const QuadraticValue& v = next[ii];
      QuadraticValue& value = stage.values[ii];

      ZF.noalias() = v.hess * F;
      value.hess = cost.state_hess;
      value.hess.noalias() += F.transpose() * ZF;
      value.grad = cost.state_grad;
      value.grad.noalias() += F.transpose() * (v.grad + v.hess * beta);
      value.constant = v.constant + v.grad.dot(beta) + 0.5 * beta.dot(v.hess * beta);
      for (PlayerIndex jj = 0; jj < num_players; jj++) {
        const MatrixXd& P = stage.gains[jj];
        const VectorXd& alpha = stage.offsets[jj];
        const MatrixXd& R = cost.control_hess[jj];
        const VectorXd& r = cost.control_grad[jj];
        RP.noalias() = R * P;
        value.hess.noalias() += P.transpose() * RP;
        value.grad.noalias() += P.transpose() * (R * alpha - r);
        value.constant += 0.5 * alpha.dot(R * alpha) - r.dot(alpha);
      }

      const double scale = std::max(1.0, value.hess.cwiseAbs().maxCoeff());
      if ((value.hess - value.hess.transpose()).cwiseAbs().maxCoeff() >
          kAsymmetryTolerance * scale)
        throw SolverError("feedback value Hessian lost symmetry", kk);
      for (Dimension c = 0; c < xdim; c++)
        for (Dimension r = c + 1; r < xdim; r++)
          value.hess(r, c) = value.hess(c, r) =
              0.5 * (value.hess(r, c) + value.hess(c, r));
    }

    next_values = &stage.values;
  }
  return solution;
}

}  // namespace hybrid_games
