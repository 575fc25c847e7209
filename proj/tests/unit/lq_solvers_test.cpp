#include "test_util.h"

#include "../oracles/lq_checks.h"
#include "../oracles/lq_oracles.h"

#include <hybrid_games/kkt_oracle.h>
#include <hybrid_games/lq_feedback_solver.h>
#include <hybrid_games/lq_hybrid_solver.h>
#include <hybrid_games/lq_open_loop_solver.h>

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace hybrid_games;
using test_util::MaxAbsDiff;
using test_util::MaxControlDiff;
using test_util::ScalarGame;

CostToGo ZeroTerminal(const LQGame& game) {
  return CostToGo::Zero(game.NumPlayers(), game.StateDim());
}

Period Whole(const LQGame& game, InformationMode mode) {
  return Period{0, game.Horizon() - 1, mode};
}

oracles::RandomGameOptions Options(Dimension n, std::vector<Dimension> udims, int horizon) {
  oracles::RandomGameOptions o;
  o.state_dim = n;
  o.control_dims = std::move(udims);
  o.horizon = horizon;
  return o;
}

// Player 0's state cost turns negative at the last stage so that the stacked
// systems at the stage before are exactly singular.
LQGame SingularGame(int horizon) {
  LQGame game = ScalarGame(horizon, 1.0, {1.0, 1.0}, {1.0, 1.0});
  game.costs.back().players[0].state_hess(0, 0) = -2.0;
  return game;
}

// ---------------------------------------------------------------- open loop

TEST(OpenLoopSolver, ZeroLinearTermsGiveZeroCostateOffsets) {
  std::mt19937_64 rng(3);
  auto options = Options(3, {1, 2}, 4);
  options.linear_terms = false;
  const LQGame game = oracles::RandomGame(options, rng);
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));
  for (const auto& stage : sol.stages)
    for (const auto& m : stage.value_grad) EXPECT_EQ(m.cwiseAbs().maxCoeff(), 0.0);
}

TEST(OpenLoopSolver, ScalarSinglePlayerMatchesKKTOracle) {
  const LQGame game = ScalarGame(2, 1.0, {1.0}, {1.0});
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));

  // The costate identity lambda_{t-1} = M_t x_t + m_t, with lambda_{t-1}
  // read off the oracle as Q x_t + q + A^T lambda_t, pins down M_t and m_t
  // once two entry states are solved.
  std::vector<double> xs[2], lambdas[2];
  const double entries[2] = {1.0, -0.5};
  for (int ss = 0; ss < 2; ss++) {
    const auto kkt = SolveKKTOracle(game, VectorXd::Constant(1, entries[ss]));
    for (int t = 0; t < 2; t++) {
      const double x = kkt.states[t](0);
      xs[ss].push_back(x);
      lambdas[ss].push_back(game.costs[t].players[0].state_hess(0, 0) * x +
                            game.dynamics[t].A(0, 0) * kkt.costates[t][0](0));
    }
    const auto traj = OpenLoopControls(game, sol, VectorXd::Constant(1, entries[ss]));
    EXPECT_LT(MaxControlDiff(traj.controls, kkt.controls), 1e-10);
  }
  for (int t = 0; t < 2; t++) {
    const double M = (lambdas[0][t] - lambdas[1][t]) / (xs[0][t] - xs[1][t]);
    const double m = lambdas[0][t] - M * xs[0][t];
    EXPECT_NEAR(sol.stages[t].value_hess[0](0, 0), M, 1e-10);
    EXPECT_NEAR(sol.stages[t].value_grad[0](0), m, 1e-10);
  }
  // Hand recursion: M_1 = 1, coupling_0 = 2, M_0 = 1 + 1/2.
  EXPECT_NEAR(sol.stages[1].value_hess[0](0, 0), 1.0, 1e-15);
  EXPECT_NEAR(sol.stages[0].value_hess[0](0, 0), 1.5, 1e-15);
}

TEST(OpenLoopSolver, RandomTwoPlayerGameMatchesKKTOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; trial++) {
    const LQGame game = oracles::RandomGame(Options(2, {1, 1}, 3), rng);
    const VectorXd x0 = VectorXd::Random(2);
    EXPECT_LT(oracles::OpenLoopKKTGap(game, x0), 1e-8) << "trial " << trial;
  }
}

TEST(OpenLoopSolver, ZeroLinearTermsFromOriginStayAtOrigin) {
  std::mt19937_64 rng(5);
  auto options = Options(4, {2, 1, 1}, 5);
  options.linear_terms = false;
  const LQGame game = oracles::RandomGame(options, rng);
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));
  const auto traj = OpenLoopControls(game, sol, VectorXd::Zero(4));
  for (const auto& x : traj.states) EXPECT_EQ(x.cwiseAbs().maxCoeff(), 0.0);
  for (const auto& us : traj.controls)
    for (const auto& u : us) EXPECT_EQ(u.cwiseAbs().maxCoeff(), 0.0);
}

TEST(OpenLoopSolver, ForwardPassSatisfiesDynamics) {
  std::mt19937_64 rng(8);
  const LQGame game = oracles::RandomGame(Options(4, {1, 2}, 5), rng);
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));
  const auto traj = OpenLoopControls(game, sol, VectorXd::Random(4));
  ASSERT_EQ(traj.states.size(), 6u);
  for (int kk = 0; kk < 5; kk++) {
    VectorXd next = game.dynamics[kk].A * traj.states[kk];
    for (PlayerIndex ii = 0; ii < 2; ii++)
      next += game.dynamics[kk].Bs[ii] * traj.controls[kk][ii];
    EXPECT_LT(MaxAbsDiff(next, traj.states[kk + 1]), 1e-12);
  }
}

TEST(OpenLoopSolver, SinglePlayerCostatesAreSymmetric) {
  std::mt19937_64 rng(9);
  const LQGame game = oracles::RandomGame(Options(4, {2}, 5), rng);
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));
  for (const auto& stage : sol.stages)
    EXPECT_LT(MaxAbsDiff(stage.value_hess[0], stage.value_hess[0].transpose()), 1e-10);
}

TEST(OpenLoopSolver, EntryCostToGoIsSymmetric) {
  std::mt19937_64 rng(10);
  const LQGame game = oracles::RandomGame(Options(3, {1, 1, 2}, 4), rng);
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));
  for (const auto& v : sol.EntryCostToGo().players)
    EXPECT_LT(MaxAbsDiff(v.hess, v.hess.transpose()), 1e-10);
}

TEST(OpenLoopSolver, SingularCouplingReportsStage) {
  const LQGame game = SingularGame(3);
  try {
    SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop), ZeroTerminal(game));
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    ASSERT_TRUE(e.stage().has_value());
    EXPECT_EQ(*e.stage(), 1);
  }
}

TEST(OpenLoopSolver, EntryStateDimensionIsChecked) {
  const LQGame game = ScalarGame(2, 1.0, {1.0}, {1.0});
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop),
                                   ZeroTerminal(game));
  EXPECT_THROW(OpenLoopControls(game, sol, VectorXd::Zero(2)), SolverError);
}

// ----------------------------------------------------------------- feedback

TEST(FeedbackSolver, ZeroStateCostsGiveZeroPolicyAndValues) {
  LQGame game = ScalarGame(4, 1.3, {1.0, 0.4}, {0.0, 0.0});
  const auto sol = SolveLQFeedback(game, Whole(game, InformationMode::kFeedback),
                                   ZeroTerminal(game));
  for (const auto& stage : sol.stages) {
    for (PlayerIndex ii = 0; ii < 2; ii++) {
      EXPECT_EQ(stage.gains[ii].cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ(stage.offsets[ii].cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ(stage.values[ii].hess.cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ(stage.values[ii].grad.cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ(stage.values[ii].constant, 0.0);
    }
  }
}

TEST(FeedbackSolver, SinglePlayerMatchesTextbookRiccati) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; trial++) {
    const LQGame game = oracles::RandomGame(Options(4, {2}, 6), rng);
    const auto sol = SolveLQFeedback(game, Whole(game, InformationMode::kFeedback),
                                     ZeroTerminal(game));
    EXPECT_LT(oracles::FeedbackBestResponseGap(game, sol, true), 1e-10);
  }
}

TEST(FeedbackSolver, ScalarTwoPlayerMatchesBestResponseIteration) {
  const LQGame game = ScalarGame(5, 1.1, {1.0, 0.6}, {1.0, 2.0});
  const int horizon = game.Horizon();
  const auto sol = SolveLQFeedback(game, Whole(game, InformationMode::kFeedback),
                                   ZeroTerminal(game));

  // Alternate exact best responses, starting from passive co-players.
  std::vector<std::vector<MatrixXd>> gains(horizon, {MatrixXd::Zero(1, 1), MatrixXd::Zero(1, 1)});
  std::vector<std::vector<VectorXd>> offsets(horizon, {VectorXd::Zero(1), VectorXd::Zero(1)});
  double change = 1.0;
  int sweeps = 0;
  while (change > 1e-12 && sweeps < 1000) {
    change = 0.0;
    for (PlayerIndex ii = 0; ii < 2; ii++) {
      const auto br = oracles::SolveLQR(oracles::BestResponseProblem(
          game, ii, 0, horizon - 1, gains, offsets, ZeroTerminal(game).players[ii]));
      for (int kk = 0; kk < horizon; kk++) {
        change = std::max(change, MaxAbsDiff(br.K[kk], gains[kk][ii]));
        gains[kk][ii] = br.K[kk];
        offsets[kk][ii] = br.k[kk];
      }
    }
    sweeps++;
  }
  ASSERT_LE(change, 1e-12);
  for (int kk = 0; kk < horizon; kk++)
    for (PlayerIndex ii = 0; ii < 2; ii++)
      EXPECT_NEAR(sol.stages[kk].gains[ii](0, 0), gains[kk][ii](0, 0), 1e-8);
}

TEST(FeedbackSolver, RandomGamesSatisfyBestResponseProperty) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; trial++) {
    const LQGame game = oracles::RandomGame(Options(4, {1, 2, 1}, 5), rng);
    const auto sol = SolveLQFeedback(game, Whole(game, InformationMode::kFeedback),
                                     ZeroTerminal(game));
    EXPECT_LT(oracles::FeedbackBestResponseGap(game, sol, true), 1e-8);
    for (const auto& stage : sol.stages)
      for (const auto& v : stage.values)
        EXPECT_EQ(MaxAbsDiff(v.hess, v.hess.transpose()), 0.0);
  }
}

TEST(FeedbackSolver, NonzeroTerminalIsUsed) {
  std::mt19937_64 rng(23);
  const LQGame game = oracles::RandomGame(Options(3, {1, 1}, 3), rng);
  CostToGo terminal = ZeroTerminal(game);
  for (auto& v : terminal.players) {
    v.hess = MatrixXd::Identity(3, 3) * 2.0;
    v.grad = VectorXd::Ones(3);
    v.constant = 4.0;
  }
  const auto sol = SolveLQFeedback(game, Whole(game, InformationMode::kFeedback), terminal);
  EXPECT_LT(oracles::FeedbackBestResponseGap(game, sol, true), 1e-8);
}

TEST(FeedbackSolver, SingularCoupledSystemReportsStage) {
  const LQGame game = SingularGame(3);
  try {
    SolveLQFeedback(game, Whole(game, InformationMode::kFeedback), ZeroTerminal(game));
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    ASSERT_TRUE(e.stage().has_value());
    EXPECT_EQ(*e.stage(), 1);
  }
}

// ------------------------------------------------------------------- hybrid

TEST(HybridSolver, SinglePeriodSchedulesMatchPureSolvers) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; trial++) {
    const LQGame game = oracles::RandomGame(Options(3, {1, 2}, 5), rng);
    const VectorXd x0 = VectorXd::Random(3);
    EXPECT_LE(oracles::HybridDegenerationGap(game, InformationMode::kFeedback, x0), 1e-12);
    EXPECT_LE(oracles::HybridDegenerationGap(game, InformationMode::kOpenLoop, x0), 1e-12);
  }
}

TEST(HybridSolver, ScalarOpenLoopThenFeedbackIsPeriodwiseNash) {
  const LQGame game = ScalarGame(4, 1.2, {1.0, 0.5}, {1.0, 0.7});
  const InformationSchedule schedule = PartitionFromFlags({true, true, false, false});
  EXPECT_LT(oracles::HybridBestResponseGap(game, schedule, VectorXd::Constant(1, 2.0)), 1e-6);
}

TEST(HybridSolver, RandomAlternatingSchedulesArePeriodwiseNash) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; trial++) {
    const LQGame game = oracles::RandomGame(Options(3, {1, 1, 2}, 7), rng);
    const InformationSchedule schedule =
        PartitionFromFlags({false, true, true, false, false, true, false});
    EXPECT_LT(oracles::HybridBestResponseGap(game, schedule, VectorXd::Random(3)), 1e-8);
  }
}

TEST(HybridSolver, BoundariesLinkPeriods) {
  std::mt19937_64 rng(33);
  const LQGame game = oracles::RandomGame(Options(2, {1, 1}, 6), rng);
  const InformationSchedule schedule = PartitionFromFlags({true, true, false, false, true, true});
  const HybridSolution sol = SolveLQHybrid(game, schedule);
  ASSERT_EQ(sol.boundaries.size(), 3u);
  for (const auto& v : sol.boundaries[2].players) EXPECT_EQ(v.hess.cwiseAbs().maxCoeff(), 0.0);
  for (int jj = 0; jj + 1 < 3; jj++) {
    const CostToGo entry = sol.EntryCostToGo(jj + 1);
    for (PlayerIndex ii = 0; ii < 2; ii++) {
      EXPECT_EQ(MaxAbsDiff(sol.boundaries[jj].players[ii].hess, entry.players[ii].hess), 0.0);
      EXPECT_EQ(MaxAbsDiff(sol.boundaries[jj].players[ii].grad, entry.players[ii].grad), 0.0);
    }
  }
  // The constant crosses an open-loop period unchanged.
  const CostToGo feedback_entry = sol.EntryCostToGo(1);
  const CostToGo open_loop_entry = sol.EntryCostToGo(0);
  for (PlayerIndex ii = 0; ii < 2; ii++)
    EXPECT_EQ(open_loop_entry.players[ii].constant, feedback_entry.players[ii].constant);
}

TEST(HybridSolver, SolverErrorsCarryPeriodIndex) {
  const LQGame game = SingularGame(2);
  try {
    SolveLQHybrid(game, PartitionFromFlags({true, false}));
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    ASSERT_TRUE(e.stage() && e.period());
    EXPECT_EQ(*e.stage(), 0);
    EXPECT_EQ(*e.period(), 0);
  }
}

TEST(HybridSolver, InvalidScheduleIsRejected) {
  const LQGame game = ScalarGame(3, 1.0, {1.0}, {1.0});
  EXPECT_THROW(SolveLQHybrid(game, PartitionFromFlags({true, false})), std::invalid_argument);
}

TEST(RolloutHybrid, FeedbackRolloutCostEqualsValueFunction) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; trial++) {
    const LQGame game = oracles::RandomGame(Options(3, {1, 2}, 5), rng);
    EXPECT_LT(oracles::FeedbackValueGap(game, VectorXd::Random(3)), 1e-8);
  }
}

TEST(RolloutHybrid, ZeroCostsFromOriginGiveZeroTrajectory) {
  const LQGame game = ScalarGame(5, 1.5, {1.0, 1.0}, {0.0, 0.0});
  const HybridSolution sol = SolveLQHybrid(game, PartitionFromFlags({true, false, false, true, true}));
  const TrajectoryIterate traj = RolloutHybrid(game, sol, VectorXd::Zero(1));
  ASSERT_EQ(traj.Horizon(), 5);
  for (const auto& x : traj.states) EXPECT_EQ(x(0), 0.0);
  for (const auto& us : traj.controls)
    for (const auto& u : us) EXPECT_EQ(u(0), 0.0);
  EXPECT_EQ(traj.occluded, (std::vector<bool>{true, false, false, true, true}));
}

TEST(RolloutHybrid, OpenLoopPeriodFollowsForwardPassFromRealizedEntry) {
  std::mt19937_64 rng(42);
  const LQGame game = oracles::RandomGame(Options(3, {1, 1}, 6), rng);
  const HybridSolution sol = SolveLQHybrid(game, PartitionFromFlags({true, true, false, false, true, true}));
  const VectorXd x0 = VectorXd::Random(3);
  const TrajectoryIterate traj = RolloutHybrid(game, sol, x0);

  const auto first = OpenLoopControls(game, *sol.OpenLoopPeriod(0), x0);
  for (int kk = 0; kk < 2; kk++) {
    EXPECT_LT(MaxAbsDiff(traj.states[kk], first.states[kk]), 1e-12);
    EXPECT_EQ(MaxAbsDiff(traj.controls[kk][0], first.controls[kk][0]), 0.0);
  }
  const auto last = OpenLoopControls(game, *sol.OpenLoopPeriod(2), traj.states[4]);
  for (int kk = 4; kk < 6; kk++)
    for (PlayerIndex ii = 0; ii < 2; ii++)
      EXPECT_EQ(MaxAbsDiff(traj.controls[kk][ii], last.controls[kk - 4][ii]), 0.0);
}

// --------------------------------------------------------------- KKT oracle

TEST(KKTOracle, SinglePlayerEqualsDirectQP) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; trial++) {
    const LQGame game = oracles::RandomGame(Options(3, {2}, 5), rng);
    const VectorXd x0 = VectorXd::Random(3);
    const auto kkt = SolveKKTOracle(game, x0);
    const auto qp = oracles::OpenLoopBestResponse(game, 0, 0, 4, x0, ControlSequence(5),
                                                  ZeroTerminal(game).players[0]);
    for (int kk = 0; kk < 5; kk++) EXPECT_LT(MaxAbsDiff(kkt.controls[kk][0], qp[kk]), 1e-10);
  }
}

TEST(KKTOracle, ZeroLinearTermsFromOriginGiveZeroSolution) {
  std::mt19937_64 rng(52);
  auto options = Options(2, {1, 1}, 4);
  options.linear_terms = false;
  const LQGame game = oracles::RandomGame(options, rng);
  const auto kkt = SolveKKTOracle(game, VectorXd::Zero(2));
  for (const auto& x : kkt.states) EXPECT_EQ(x.cwiseAbs().maxCoeff(), 0.0);
  for (const auto& us : kkt.controls)
    for (const auto& u : us) EXPECT_EQ(u.cwiseAbs().maxCoeff(), 0.0);
}

TEST(KKTOracle, ResidualIsSmallOnRandomGames) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; trial++) {
    const LQGame game = oracles::RandomGame(Options(4, {1, 2, 1}, 5), rng);
    const auto kkt = SolveKKTOracle(game, VectorXd::Random(4));
    EXPECT_LT(kkt.residual, 1e-10);
  }
}

TEST(KKTOracle, SystemIsSquareWithExpectedSize) {
  std::mt19937_64 rng(54);
  const LQGame game = oracles::RandomGame(Options(3, {1, 2}, 4), rng);
  const auto sys = AssembleKKTSystem(game, VectorXd::Zero(3));
  const Dimension expected = 4 * (3 * (2 + 1) + 3);
  EXPECT_EQ(sys.matrix.rows(), expected);
  EXPECT_EQ(sys.matrix.cols(), expected);
  EXPECT_EQ(sys.rhs.size(), expected);
}

TEST(KKTOracle, TerminalCostMatchesOpenLoopRecursion) {
  std::mt19937_64 rng(55);
  const LQGame game = oracles::RandomGame(Options(2, {1, 1}, 3), rng);
  CostToGo terminal = ZeroTerminal(game);
  terminal.players[0].hess = MatrixXd::Identity(2, 2);
  terminal.players[1].grad = VectorXd::Ones(2);
  const VectorXd x0 = VectorXd::Random(2);
  const auto kkt = SolveKKTOracle(game, x0, &terminal);
  const auto sol = SolveLQOpenLoop(game, Whole(game, InformationMode::kOpenLoop), terminal);
  EXPECT_LT(MaxControlDiff(OpenLoopControls(game, sol, x0).controls, kkt.controls), 1e-10);
}

}  // namespace
