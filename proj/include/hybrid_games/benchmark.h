#pragma once

#include <hybrid_games/lq_game.h>

#include <cstdint>
#include <vector>

namespace hybrid_games {

struct BenchmarkSettings {
  std::vector<Dimension> state_dims = {8, 16, 32, 64, 128};
  std::size_t num_players = 2;
  Dimension control_dim = 2;  // per player
  int horizon = 20;
  int period_length = 5;  // alternating open-loop / feedback periods
  int repeats = 5;        // the fastest repeat is kept
  std::uint64_t seed = 1;
};

struct BenchmarkPoint {
  Dimension state_dim = 0;
  double seconds = 0.0;
};

struct BenchmarkResult {
  std::vector<BenchmarkPoint> points;
  double slope = 0.0;  // least-squares slope of log(seconds) vs log(state_dim)
};

// Random well-posed LQ game: stable-ish A, dense B, PSD Q and PD R.
LQGame RandomLQGame(Dimension state_dim, std::size_t num_players,
                    Dimension control_dim, int horizon, std::uint64_t seed);

// Times SolveLQHybrid on an alternating schedule for each state dimension.
BenchmarkResult BenchmarkHybridSolve(const BenchmarkSettings& settings);

double LogLogSlope(const std::vector<BenchmarkPoint>& points);

}  // namespace hybrid_games
