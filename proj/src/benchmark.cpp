#include <hybrid_games/benchmark.h>
#include <hybrid_games/information_schedule.h>
#include <hybrid_games/lq_hybrid_solver.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace hybrid_games {

namespace {

MatrixXd RandomMatrix(Dimension rows, Dimension cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (Dimension c = 0; c < cols; c++)
    for (Dimension r = 0; r < rows; r++) m(r, c) = normal(rng);
  return m;
}

InformationSchedule AlternatingSchedule(int horizon, int period_length) {
  std::vector<bool> flags(horizon);
  for (int kk = 0; kk < horizon; kk++) flags[kk] = (kk / period_length) % 2 == 0;
  return PartitionFromFlags(flags);
}

}  // namespace

LQGame RandomLQGame(Dimension state_dim, std::size_t num_players,
                    Dimension control_dim, int horizon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(state_dim));
  LQGame game;
  for (int kk = 0; kk < horizon; kk++) {
    LinearDynamicsStage dyn;
    dyn.A = MatrixXd::Identity(state_dim, state_dim) +
            0.1 * scale * RandomMatrix(state_dim, state_dim, rng);
    for (PlayerIndex ii = 0; ii < num_players; ii++)
      dyn.Bs.push_back(0.1 * scale * RandomMatrix(state_dim, control_dim, rng));
    game.dynamics.push_back(std::move(dyn));

    QuadraticCostStage cost;
    for (PlayerIndex ii = 0; ii < num_players; ii++) {
      PlayerStageCost c;
      const MatrixXd G = RandomMatrix(state_dim, state_dim, rng);
      c.state_hess = scale * scale * G.transpose() * G +
                     0.1 * MatrixXd::Identity(state_dim, state_dim);
      c.state_grad = RandomMatrix(state_dim, 1, rng);
      for (PlayerIndex jj = 0; jj < num_players; jj++) {
        const MatrixXd H = RandomMatrix(control_dim, control_dim, rng);
        const MatrixXd psd = 0.1 * H.transpose() * H;
        c.control_hess.push_back(
            jj == ii ? MatrixXd(psd + MatrixXd::Identity(control_dim, control_dim))
                     : psd);
        c.control_grad.push_back(RandomMatrix(control_dim, 1, rng));
      }
      cost.players.push_back(std::move(c));
    }
    game.costs.push_back(std::move(cost));
  }
  return game;
}

BenchmarkResult BenchmarkHybridSolve(const BenchmarkSettings& settings) {
  BenchmarkResult result;
  const InformationSchedule schedule =
      AlternatingSchedule(settings.horizon, settings.period_length);
  for (Dimension n : settings.state_dims) {
    const LQGame game = RandomLQGame(n, settings.num_players, settings.control_dim,
                                     settings.horizon, settings.seed + n);
    double best = std::numeric_limits<double>::infinity();
    for (int rr = 0; rr < std::max(1, settings.repeats); rr++) {
      const auto start = std::chrono::steady_clock::now();
      const HybridSolution sol = SolveLQHybrid(game, schedule);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      best = std::min(best, elapsed);
      if (sol.periods.empty()) break;  // keeps the solve from being elided
    }
    result.points.push_back({n, best});
  }
  result.slope = LogLogSlope(result.points);
  return result;
}

double LogLogSlope(const std::vector<BenchmarkPoint>& points) {
  const double count = static_cast<double>(points.size());
  if (points.size() < 2) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double lx = std::log(static_cast<double>(p.state_dim));
    const double ly = std::log(p.seconds);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace hybrid_games
