#include <hybrid_games/lq_game.h>

#include <Eigen/Cholesky>

#include <sstream>

namespace hybrid_games {

namespace {

std::string Decorate(const std::string& what, std::optional<int> stage,
                     std::optional<int> period) {
  std::ostringstream out;
  out << what;
  if (stage) out << " [stage " << *stage << "]";
  if (period) out << " [period " << *period << "]";
  return out.str();
}

constexpr double kSymmetryTolerance = 1e-12;

bool IsSymmetric(const MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

}  // namespace

SolverError::SolverError(const std::string& what, std::optional<int> stage,
                         std::optional<int> period)
    : std::runtime_error(Decorate(what, stage, period)),
      message_(what),
      stage_(stage),
      period_(period) {}

SolverError SolverError::WithPeriod(int period) const {
  return SolverError(message_, stage_, period);
}

Dimension LQGame::TotalControlDim() const {
  Dimension total = 0;
  for (const auto& B : dynamics.front().Bs) total += B.cols();
  return total;
}

std::vector<Dimension> LQGame::ControlDims() const {
  std::vector<Dimension> dims;
  for (const auto& B : dynamics.front().Bs) dims.push_back(B.cols());
  return dims;
}

CostToGo CostToGo::Zero(std::size_t num_players, Dimension xdim) {
  CostToGo zero;
  zero.players.assign(num_players, QuadraticValue{MatrixXd::Zero(xdim, xdim),
                                                  VectorXd::Zero(xdim), 0.0});
  return zero;
}

ValidationReport ValidateLQGame(const LQGame& game) {
  ValidationReport report;
  auto issue = [&report](int stage, const std::string& what) {
    std::ostringstream out;
    out << "stage " << stage << ": " << what;
    report.issues.push_back(out.str());
  };

  if (game.dynamics.empty()) {
    report.issues.push_back("horizon must be at least 1");
    return report;
  }
  if (game.costs.size() != game.dynamics.size()) {
    report.issues.push_back("dynamics and cost horizons differ");
    return report;
  }
  const auto& first = game.dynamics.front();
  const Dimension xdim = first.A.rows();
  const std::size_t num_players = first.Bs.size();
  if (num_players == 0) {
    report.issues.push_back("at least one player is required");
    return report;
  }
  std::vector<Dimension> udims;
  for (const auto& B : first.Bs) udims.push_back(B.cols());

  for (int kk = 0; kk < game.Horizon(); kk++) {
    const auto& lin = game.dynamics[kk];
    const auto& quad = game.costs[kk];
    if (lin.A.rows() != xdim || lin.A.cols() != xdim)
      issue(kk, "A is not " + std::to_string(xdim) + "x" + std::to_string(xdim));
    if (lin.Bs.size() != num_players) {
      issue(kk, "player count in dynamics differs from stage 0");
      continue;
    }
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      if (lin.Bs[ii].rows() != xdim)
        issue(kk, "B[" + std::to_string(ii) + "] has wrong row count");
      if (lin.Bs[ii].cols() != udims[ii] || udims[ii] < 1)
        issue(kk, "B[" + std::to_string(ii) + "] has wrong column count");
    }
    if (quad.players.size() != num_players) {
      issue(kk, "player count in costs differs from dynamics");
      continue;
    }
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      const auto& cost = quad.players[ii];
      const std::string who = "player " + std::to_string(ii) + " ";
      if (cost.state_hess.rows() != xdim || cost.state_hess.cols() != xdim) {
        issue(kk, who + "state Hessian has wrong shape");
      } else if (!IsSymmetric(cost.state_hess)) {
        issue(kk, who + "state Hessian is not symmetric");
      }
      if (cost.state_grad.size() != xdim)
        issue(kk, who + "state gradient has wrong size");
      if (cost.control_hess.size() != num_players ||
          cost.control_grad.size() != num_players) {
        issue(kk, who + "control cost terms missing for some players");
        continue;
      }
      for (PlayerIndex jj = 0; jj < num_players; jj++) {
        const auto& R = cost.control_hess[jj];
        const std::string term = who + "R[" + std::to_string(jj) + "] ";
        if (R.rows() != udims[jj] || R.cols() != udims[jj]) {
          issue(kk, term + "has wrong shape");
          continue;
        }
        if (!IsSymmetric(R)) issue(kk, term + "is not symmetric");
        if (cost.control_grad[jj].size() != udims[jj])
          issue(kk, who + "r[" + std::to_string(jj) + "] has wrong size");
        if (jj == ii) {
          Eigen::LLT<MatrixXd> llt(0.5 * (R + R.transpose()));
          if (llt.info() != Eigen::Success)
            issue(kk, who + "R^{ii} not positive definite");
        }
      }
    }
  }
  return report;
}

double StageCost(const PlayerStageCost& cost, const VectorXd& x,
                 const StageControls& us) {
  double total = 0.5 * x.dot(cost.state_hess * x) + cost.state_grad.dot(x);
  for (PlayerIndex jj = 0; jj < us.size(); jj++) {
    total += 0.5 * us[jj].dot(cost.control_hess[jj] * us[jj]) +
             cost.control_grad[jj].dot(us[jj]);
  }
  return total;
}

}  // namespace hybrid_games
