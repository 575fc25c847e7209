#include <hybrid_games/lq_open_loop_solver.h>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cassert>

namespace hybrid_games {

namespace {

void FactorOwnControlCost(const MatrixXd& R, int stage, Eigen::LLT<MatrixXd>& llt) {
  llt.compute(R);
  if (llt.info() != Eigen::Success)
    throw SolverError("own-control Hessian is not positive definite", stage);
}

void FactorCoupling(const MatrixXd& coupling, int stage,
                    Eigen::PartialPivLU<MatrixXd>& lu) {
  lu.compute(coupling);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinReciprocalCondition))
    throw SolverError("open-loop coupling matrix is singular or ill-conditioned",
                      stage);
}

}  // namespace

const std::vector<MatrixXd>& OpenLoopPeriodSolution::NextHess(int stage) const {
  const int offset = stage - period.first + 1;
  return offset == static_cast<int>(stages.size()) ? terminal_hess
                                                    : stages[offset].value_hess;
}

const std::vector<VectorXd>& OpenLoopPeriodSolution::NextGrad(int stage) const {
  const int offset = stage - period.first + 1;
  return offset == static_cast<int>(stages.size()) ? terminal_grad
                                                    : stages[offset].value_grad;
}

CostToGo OpenLoopPeriodSolution::EntryCostToGo() const {
  CostToGo entry;
  const auto& front = stages.front();
  for (std::size_t ii = 0; ii < front.value_hess.size(); ii++) {
    const MatrixXd& M = front.value_hess[ii];
    entry.players.push_back(QuadraticValue{0.5 * (M + M.transpose()),
                                           front.value_grad[ii],
                                           terminal.players[ii].constant});
  }
  return entry;
}

OpenLoopPeriodSolution SolveLQOpenLoop(const LQGame& game, const Period& period,
                                       const CostToGo& terminal) {
  const std::size_t num_players = game.NumPlayers();
  const Dimension xdim = game.StateDim();
  assert(terminal.players.size() == num_players);
  assert(period.first >= 0 && period.last < game.Horizon());

  OpenLoopPeriodSolution solution;
  solution.period = period;
  solution.terminal = terminal;
  solution.stages.resize(period.Length());

  for (const auto& v : terminal.players) {
    solution.terminal_hess.push_back(v.hess);
    solution.terminal_grad.push_back(v.grad);
  }

  // Values one index past the current stage.
  const std::vector<MatrixXd>* next_hess = &solution.terminal_hess;
  const std::vector<VectorXd>* next_grad = &solution.terminal_grad;

  std::vector<MatrixXd> warped_Bs(num_players);  // R^{ii}^{-1} B^iT
  std::vector<VectorXd> warped_rs(num_players);  // R^{ii}^{-1} r^{ii}
  MatrixXd coupled_A(xdim, xdim);
  VectorXd coupled_drift(xdim);
  MatrixXd warped_M;               // R^{ii}^{-1} B^iT M^i
  MatrixXd M_coupled_A(xdim, xdim);
  Eigen::LLT<MatrixXd> llt;
  Eigen::PartialPivLU<MatrixXd> lu(xdim);
  for (int kk = period.last; kk >= period.first; kk--) {
    const auto& lin = game.dynamics[kk];
    const auto& quad = game.costs[kk];
    auto& stage = solution.stages[kk - period.first];

    stage.coupling = MatrixXd::Identity(xdim, xdim);
    stage.drift = VectorXd::Zero(xdim);
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      FactorOwnControlCost(quad.players[ii].control_hess[ii], kk, llt);
      warped_Bs[ii] = llt.solve(lin.Bs[ii].transpose());
      warped_rs[ii] = llt.solve(quad.players[ii].control_grad[ii]);
      warped_M.noalias() = warped_Bs[ii] * (*next_hess)[ii];
      stage.coupling.noalias() += lin.Bs[ii] * warped_M;
      stage.drift.noalias() -=
          lin.Bs[ii] * (warped_Bs[ii] * (*next_grad)[ii] + warped_rs[ii]);
    }

    FactorCoupling(stage.coupling, kk, lu);
    coupled_A = lu.solve(lin.A);
    coupled_drift = lu.solve(stage.drift);

    stage.value_hess.resize(num_players);
    stage.value_grad.resize(num_players);
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      const MatrixXd& M = (*next_hess)[ii];
      stage.value_hess[ii] = quad.players[ii].state_hess;
      M_coupled_A.noalias() = M * coupled_A;
      stage.value_hess[ii].noalias() += lin.A.transpose() * M_coupled_A;
      stage.value_grad[ii] = quad.players[ii].state_grad;
      stage.value_grad[ii].noalias() +=
          lin.A.transpose() * ((*next_grad)[ii] + M * coupled_drift);
    }

    next_hess = &stage.value_hess;
    next_grad = &stage.value_grad;
  }
  return solution;
}

OpenLoopTrajectory OpenLoopControls(const LQGame& game,
                                    const OpenLoopPeriodSolution& solution,
                                    const VectorXd& x_entry) {
  const std::size_t num_players = game.NumPlayers();
  const Period& period = solution.period;
  if (x_entry.size() != game.StateDim())
    throw SolverError("entry state has wrong dimension", period.first);

  Eigen::LLT<MatrixXd> llt;
  Eigen::PartialPivLU<MatrixXd> lu(game.StateDim());
  OpenLoopTrajectory out;
  out.states.push_back(x_entry);
  for (int kk = period.first; kk <= period.last; kk++) {
    const auto& lin = game.dynamics[kk];
    const auto& quad = game.costs[kk];
    const auto& stage = solution.stages[kk - period.first];
    const auto& next_hess = solution.NextHess(kk);
    const auto& next_grad = solution.NextGrad(kk);

    FactorCoupling(stage.coupling, kk, lu);
    const VectorXd x_next =
        lu.solve(lin.A * out.states.back() + stage.drift);

    StageControls us(num_players);
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      FactorOwnControlCost(quad.players[ii].control_hess[ii], kk, llt);
      us[ii] = -llt.solve(lin.Bs[ii].transpose() *
                              (next_hess[ii] * x_next + next_grad[ii]) +
                          quad.players[ii].control_grad[ii]);
    }
    out.controls.push_back(std::move(us));
    out.states.push_back(x_next);
  }
  return out;
}

}  // namespace hybrid_games
