#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Running costs for the driving scenarios. Each player pays a weighted sum of
//
//   goal             |p - p_goal|^2
//   nominal speed    (v - v_nom)^2
//   control          u^T R u                       (own control only)
//   lane center      d(p)^2
//   lane crossing    1{d(p) > d_lane} (d_lane - d(p))^2
//   proximity        1{|p - p_j| < d_prox} (d_prox - |p - p_j|)^2  per j != i
//                    (optionally per point along player j's body axis)
//   speed bounds     1{v > v_max} (v - v_max)^2 + 1{v < v_min} (v_min - v)^2
//
// where d(p) is the distance from the player's lane center-line. Indicator
// terms are differentiated with the active set fixed at the expansion point.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/lq_game.h>
#include <hybrid_games/types.h>

#include <vector>

namespace hybrid_games {

// Running cost of every player in an N-player game.
class GameCost {
 public:
  virtual ~GameCost() = default;

  virtual std::size_t NumPlayers() const = 0;
  virtual double Evaluate(PlayerIndex ii, int stage, const VectorXd& x,
                          const StageControls& us) const = 0;
  // Gradients and Hessians at (x, us), without any PSD correction.
  virtual PlayerStageCost Quadraticize(PlayerIndex ii, int stage,
                                       const VectorXd& x,
                                       const StageControls& us) const = 0;
};

struct LaneGeometry {
  Vector2d point = Vector2d::Zero();
  Vector2d direction = Vector2d::UnitX();  // unit length

  double SignedDistance(const Vector2d& p) const;
  Vector2d Normal() const { return Vector2d(-direction.y(), direction.x()); }
};

inline constexpr double kDefaultLaneHalfWidth = 3.75;
inline constexpr double kDefaultProximityThreshold = 3.0;

struct CostWeights {
  Vector2d goal = Vector2d::Zero();
  double goal_weight = 0.0;

  double nominal_speed = 0.0;
  double nominal_speed_weight = 0.0;

  Matrix2d control_weight = Matrix2d::Identity();  // on (omega, accel)

  LaneGeometry lane;
  double lane_center_weight = 0.0;
  double lane_crossing_weight = 0.0;
  double lane_half_width = kDefaultLaneHalfWidth;

  double proximity_weight = 0.0;
  double proximity_threshold = kDefaultProximityThreshold;
  // Replaces the default proximity term for one other player. The distance is
  // measured to each point p_j + s (cos theta_j, sin theta_j), s in
  // |offsets|, and every point contributes its own penalty. Several offsets
  // along the body axis model a long vehicle.
  struct ProximityOverride {
    PlayerIndex player = 0;
    double threshold = kDefaultProximityThreshold;
    std::vector<double> offsets = {0.0};
  };
  std::vector<ProximityOverride> proximity_overrides;

  const ProximityOverride* OverrideFor(PlayerIndex other) const;

  double min_speed = 0.0;
  double max_speed = 1e9;
  double speed_bound_weight = 0.0;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

class DrivingCost : public GameCost {
 public:
  explicit DrivingCost(std::vector<CostWeights> weights);

  std::size_t NumPlayers() const override { return weights_.size(); }
  const CostWeights& Weights(PlayerIndex ii) const { return weights_[ii]; }

  double Evaluate(PlayerIndex ii, int stage, const VectorXd& x,
                  const StageControls& us) const override;
  PlayerStageCost Quadraticize(PlayerIndex ii, int stage, const VectorXd& x,
                               const StageControls& us) const override;

 private:
  std::vector<CostWeights> weights_;
};

// Exact quadratic costs read from an LQGame.
class QuadraticGameCost : public GameCost {
 public:
  explicit QuadraticGameCost(std::vector<QuadraticCostStage> stages);

  std::size_t NumPlayers() const override {
    return stages_.front().players.size();
  }
  double Evaluate(PlayerIndex ii, int stage, const VectorXd& x,
                  const StageControls& us) const override;
  PlayerStageCost Quadraticize(PlayerIndex ii, int stage, const VectorXd& x,
                               const StageControls& us) const override;

 private:
  std::vector<QuadraticCostStage> stages_;
};

}  // namespace hybrid_games
