#pragma once

#include <hybrid_games/lq_game.h>
#include <hybrid_games/types.h>

#include <Eigen/Core>

#include <vector>

namespace hybrid_games {

// Per-player unicycle state (p_x, p_y, v, theta) and control (omega, accel).
inline constexpr Dimension kUnicycleStateDim = 4;
inline constexpr Dimension kUnicycleControlDim = 2;
enum UnicycleState : Dimension { kPosX = 0, kPosY = 1, kSpeed = 2, kHeading = 3 };
enum UnicycleControl : Dimension { kOmega = 0, kAccel = 1 };

using UnicycleVector = Eigen::Matrix<double, 4, 1>;

// Forward-Euler step of a single unicycle.
UnicycleVector UnicycleStep(const UnicycleVector& state, const Vector2d& control,
                            double dt);

// Discrete-time dynamics of all players stacked into one state vector.
class MultiPlayerDynamics {
 public:
  virtual ~MultiPlayerDynamics() = default;

  virtual Dimension StateDim() const = 0;
  virtual std::vector<Dimension> ControlDims() const = 0;
  std::size_t NumPlayers() const { return ControlDims().size(); }

  virtual VectorXd Step(int stage, const VectorXd& x,
                        const StageControls& us) const = 0;

  // Jacobians of Step with respect to the state and each player's control.
  virtual LinearDynamicsStage Linearize(int stage, const VectorXd& x,
                                        const StageControls& us) const = 0;
};

class UnicycleDynamics : public MultiPlayerDynamics {
 public:
  UnicycleDynamics(std::size_t num_players, double dt);

  Dimension StateDim() const override { return num_players_ * kUnicycleStateDim; }
  std::vector<Dimension> ControlDims() const override {
    return std::vector<Dimension>(num_players_, kUnicycleControlDim);
  }
  double TimeStep() const { return dt_; }

  VectorXd Step(int stage, const VectorXd& x, const StageControls& us) const override;
  LinearDynamicsStage Linearize(int stage, const VectorXd& x,
                                const StageControls& us) const override;

 private:
  std::size_t num_players_;
  double dt_;
};

// Time-varying linear dynamics, e.g. taken from an LQGame. Used to run the
// iterative solver on problems that are exactly linear-quadratic.
class LinearGameDynamics : public MultiPlayerDynamics {
 public:
  explicit LinearGameDynamics(std::vector<LinearDynamicsStage> stages);

  Dimension StateDim() const override { return stages_.front().A.rows(); }
  std::vector<Dimension> ControlDims() const override;

  VectorXd Step(int stage, const VectorXd& x, const StageControls& us) const override;
  LinearDynamicsStage Linearize(int stage, const VectorXd& x,
                                const StageControls& us) const override;

 private:
  std::vector<LinearDynamicsStage> stages_;
};

}  // namespace hybrid_games
