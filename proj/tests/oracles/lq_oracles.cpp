#include "lq_oracles.h"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>

namespace oracles {

namespace {

MatrixXd Gaussian(Dimension rows, Dimension cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (Dimension c = 0; c < cols; c++)
    for (Dimension r = 0; r < rows; r++) m(r, c) = normal(rng);
  return m;
}

MatrixXd Symmetric(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

LQGame RandomGame(const RandomGameOptions& options, std::mt19937_64& rng) {
  const Dimension n = options.state_dim;
  const std::size_t num_players = options.control_dims.size();
  LQGame game;
  for (int kk = 0; kk < options.horizon; kk++) {
    hybrid_games::LinearDynamicsStage dyn;
    dyn.A = MatrixXd::Identity(n, n) +
            options.dynamics_scale / std::sqrt(double(n)) * Gaussian(n, n, rng);
    for (Dimension m : options.control_dims)
      dyn.Bs.push_back(options.input_scale * Gaussian(n, m, rng));
    game.dynamics.push_back(dyn);

    hybrid_games::QuadraticCostStage cost;
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      hybrid_games::PlayerStageCost c;
      const MatrixXd G = Gaussian(n, n, rng);
      c.state_hess = Symmetric(G.transpose() * G / double(n));
      c.state_grad = options.linear_terms ? VectorXd(Gaussian(n, 1, rng))
                                          : VectorXd::Zero(n);
      for (PlayerIndex jj = 0; jj < num_players; jj++) {
        const Dimension m = options.control_dims[jj];
        const MatrixXd H = Gaussian(m, m, rng);
        MatrixXd R = MatrixXd::Zero(m, m);
        VectorXd r = VectorXd::Zero(m);
        if (jj == ii) {
          R = Symmetric(H.transpose() * H / double(m)) + MatrixXd::Identity(m, m);
          if (options.linear_terms) r = Gaussian(m, 1, rng);
        } else if (options.cross_control_costs) {
          R = Symmetric(0.5 * H.transpose() * H / double(m));
          if (options.linear_terms) r = Gaussian(m, 1, rng);
        }
        c.control_hess.push_back(R);
        c.control_grad.push_back(r);
      }
      cost.players.push_back(c);
    }
    game.costs.push_back(cost);
  }
  return game;
}

LQRSolution SolveLQR(const LQRProblem& problem) {
  const int horizon = static_cast<int>(problem.A.size());
  LQRSolution sol;
  sol.K.resize(horizon);
  sol.k.resize(horizon);
  sol.values.resize(horizon);

  QuadraticValue next = problem.terminal;
  for (int kk = horizon - 1; kk >= 0; kk--) {
    const MatrixXd& A = problem.A[kk];
    const MatrixXd& B = problem.B[kk];
    const VectorXd& c = problem.c[kk];
    const MatrixXd& V = next.hess;
    const VectorXd& v = next.grad;

    const MatrixXd H = problem.R[kk] + B.transpose() * V * B;
    const MatrixXd G = B.transpose() * V * A;
    const VectorXd Vc_v = V * c + v;
    const VectorXd g = B.transpose() * Vc_v + problem.r[kk];
    const Eigen::FullPivLU<MatrixXd> lu(H);
    sol.K[kk] = lu.solve(G);
    sol.k[kk] = lu.solve(g);

    QuadraticValue value;
    value.hess = Symmetric(problem.Q[kk] + A.transpose() * V * A -
                           G.transpose() * sol.K[kk]);
    value.grad = problem.q[kk] + A.transpose() * Vc_v - sol.K[kk].transpose() * g;
    value.constant = next.constant + problem.constant[kk] + 0.5 * c.dot(V * c) +
                     v.dot(c) - 0.5 * g.dot(sol.k[kk]);
    sol.values[kk] = value;
    next = value;
  }
  return sol;
}

LQRProblem BestResponseProblem(const LQGame& game, PlayerIndex player, int first,
                               int last, const std::vector<std::vector<MatrixXd>>& gains,
                               const std::vector<std::vector<VectorXd>>& offsets,
                               const QuadraticValue& terminal) {
  const Dimension n = game.StateDim();
  LQRProblem p;
  for (int kk = first; kk <= last; kk++) {
    const auto& dyn = game.dynamics[kk];
    const auto& cost = game.costs[kk].players[player];
    MatrixXd A = dyn.A;
    VectorXd c = VectorXd::Zero(n);
    MatrixXd Q = cost.state_hess;
    VectorXd q = cost.state_grad;
    double constant = 0.0;
    for (PlayerIndex jj = 0; jj < game.NumPlayers(); jj++) {
      if (jj == player) continue;
      const MatrixXd& P = gains[kk - first][jj];
      const VectorXd& alpha = offsets[kk - first][jj];
      const MatrixXd& R = cost.control_hess[jj];
      const VectorXd& r = cost.control_grad[jj];
      A -= dyn.Bs[jj] * P;
      c -= dyn.Bs[jj] * alpha;
      Q += P.transpose() * R * P;
      q += P.transpose() * (R * alpha - r);
      constant += 0.5 * alpha.dot(R * alpha) - r.dot(alpha);
    }
    p.A.push_back(A);
    p.B.push_back(dyn.Bs[player]);
    p.c.push_back(c);
    p.Q.push_back(Q);
    p.q.push_back(q);
    p.R.push_back(cost.control_hess[player]);
    p.r.push_back(cost.control_grad[player]);
    p.constant.push_back(constant);
  }
  p.terminal = terminal;
  return p;
}

std::vector<VectorXd> OpenLoopBestResponse(
    const LQGame& game, PlayerIndex player, int first, int last,
    const VectorXd& x_entry, const std::vector<std::vector<VectorXd>>& controls,
    const QuadraticValue& terminal) {
  const Dimension n = game.StateDim();
  const Dimension m = game.ControlDim(player);
  const int length = last - first + 1;
  const Dimension dim = length * m;

  // x_s = a + E U with U the player's stacked controls.
  VectorXd a = x_entry;
  MatrixXd E = MatrixXd::Zero(n, dim);
  MatrixXd H = MatrixXd::Zero(dim, dim);
  VectorXd g = VectorXd::Zero(dim);
  for (int ss = 0; ss < length; ss++) {
    const auto& dyn = game.dynamics[first + ss];
    const auto& cost = game.costs[first + ss].players[player];
    H += E.transpose() * cost.state_hess * E;
    g += E.transpose() * (cost.state_hess * a + cost.state_grad);
    H.block(ss * m, ss * m, m, m) += cost.control_hess[player];
    g.segment(ss * m, m) += cost.control_grad[player];

    VectorXd a_next = dyn.A * a;
    for (PlayerIndex jj = 0; jj < game.NumPlayers(); jj++)
      if (jj != player) a_next += dyn.Bs[jj] * controls[ss][jj];
    MatrixXd E_next = dyn.A * E;
    E_next.block(0, ss * m, n, m) += dyn.Bs[player];
    a = a_next;
    E = E_next;
  }
  const MatrixXd S = Symmetric(terminal.hess);
  H += E.transpose() * S * E;
  g += E.transpose() * (S * a + terminal.grad);

  const VectorXd U = Symmetric(H).ldlt().solve(-g);
  std::vector<VectorXd> out;
  for (int ss = 0; ss < length; ss++) out.push_back(U.segment(ss * m, m));
  return out;
}

}  // namespace oracles
