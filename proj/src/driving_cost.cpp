#include <hybrid_games/driving_cost.h>
#include <hybrid_games/dynamics.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace hybrid_games {

namespace {

constexpr double kMinSeparation = 1e-9;

Vector2d Position(const VectorXd& x, PlayerIndex ii) {
  const Dimension o = ii * kUnicycleStateDim;
  return {x(o + kPosX), x(o + kPosY)};
}

double Sq(double v) { return v * v; }

}  // namespace

double LaneGeometry::SignedDistance(const Vector2d& p) const {
  return Normal().dot(p - point);
}

const CostWeights::ProximityOverride* CostWeights::OverrideFor(
    PlayerIndex other) const {
  for (const auto& o : proximity_overrides)
    if (o.player == other) return &o;
  return nullptr;
}

void CostWeights::Validate() const {
  auto require = [](bool ok, const char* field) {
    if (!ok) throw std::invalid_argument(field);
  };
  require(goal_weight >= 0.0, "goal_weight");
  require(nominal_speed_weight >= 0.0, "nominal_speed_weight");
  require(lane_center_weight >= 0.0, "lane_center_weight");
  require(lane_crossing_weight >= 0.0, "lane_crossing_weight");
  require(proximity_weight >= 0.0, "proximity_weight");
  require(speed_bound_weight >= 0.0, "speed_bound_weight");
  require(lane_half_width > 0.0, "lane_half_width");
  require(proximity_threshold > 0.0, "proximity_threshold");
  for (const auto& o : proximity_overrides)
    require(o.threshold > 0.0 && !o.offsets.empty(), "proximity_overrides");
  require(min_speed < max_speed, "min_speed");
  require(std::abs(lane.direction.norm() - 1.0) < 1e-9, "lane.direction");
  require((control_weight - control_weight.transpose()).cwiseAbs().maxCoeff() < 1e-12,
          "control_weight");
}

DrivingCost::DrivingCost(std::vector<CostWeights> weights)
    : weights_(std::move(weights)) {
  for (const auto& w : weights_) w.Validate();
}

double DrivingCost::Evaluate(PlayerIndex ii, int, const VectorXd& x,
                             const StageControls& us) const {
  const CostWeights& w = weights_[ii];
  const Dimension o = ii * kUnicycleStateDim;
  const Vector2d p = Position(x, ii);
  const double v = x(o + kSpeed);

  double total = w.goal_weight * (p - w.goal).squaredNorm();
  total += w.nominal_speed_weight * Sq(v - w.nominal_speed);
  total += us[ii].dot(w.control_weight * us[ii]);

  const double lane_dist = std::abs(w.lane.SignedDistance(p));
  total += w.lane_center_weight * Sq(lane_dist);
  if (lane_dist > w.lane_half_width)
    total += w.lane_crossing_weight * Sq(w.lane_half_width - lane_dist);

  for (PlayerIndex jj = 0; jj < weights_.size(); jj++) {
    if (jj == ii) continue;
    const Vector2d pj = Position(x, jj);
    const double theta = x(jj * kUnicycleStateDim + kHeading);
    const Vector2d axis(std::cos(theta), std::sin(theta));
    const auto* o = w.OverrideFor(jj);
    const double threshold = o ? o->threshold : w.proximity_threshold;
    for (double s : o ? o->offsets : std::vector<double>{0.0}) {
      const double r = (p - pj - s * axis).norm();
      if (r < threshold) total += w.proximity_weight * Sq(threshold - r);
    }
  }

  if (v > w.max_speed) total += w.speed_bound_weight * Sq(v - w.max_speed);
  if (v < w.min_speed) total += w.speed_bound_weight * Sq(w.min_speed - v);
  return total;
}

PlayerStageCost DrivingCost::Quadraticize(PlayerIndex ii, int, const VectorXd& x,
                                          const StageControls& us) const {
  const CostWeights& w = weights_[ii];
  const std::size_t num_players = weights_.size();
  const Dimension xdim = x.size();
  const Dimension o = ii * kUnicycleStateDim;
  const Dimension px = o + kPosX;
  const Dimension vx = o + kSpeed;
  const Vector2d p = Position(x, ii);
  const double v = x(vx);

  PlayerStageCost q;
  q.state_hess = MatrixXd::Zero(xdim, xdim);
  q.state_grad = VectorXd::Zero(xdim);
  auto pos_hess = q.state_hess.block<2, 2>(px, px);
  auto pos_grad = q.state_grad.segment<2>(px);

  // Goal.
  pos_grad += 2.0 * w.goal_weight * (p - w.goal);
  pos_hess += 2.0 * w.goal_weight * Matrix2d::Identity();

  // Nominal speed.
  q.state_grad(vx) += 2.0 * w.nominal_speed_weight * (v - w.nominal_speed);
  q.state_hess(vx, vx) += 2.0 * w.nominal_speed_weight;

  // Lane center and lane crossing.
  const Vector2d n = w.lane.Normal();
  const double s = w.lane.SignedDistance(p);
  pos_grad += 2.0 * w.lane_center_weight * s * n;
  pos_hess += 2.0 * w.lane_center_weight * n * n.transpose();
  if (std::abs(s) > w.lane_half_width) {
    const double sign = s > 0.0 ? 1.0 : -1.0;
    pos_grad += 2.0 * w.lane_crossing_weight * (std::abs(s) - w.lane_half_width) *
                sign * n;
    pos_hess += 2.0 * w.lane_crossing_weight * n * n.transpose();
  }

  // Proximity to every other player. The distance vector
  // d = p - p_j - s (cos theta_j, sin theta_j) depends on both positions and,
  // for s != 0, on the other player's heading.
  for (PlayerIndex jj = 0; jj < num_players; jj++) {
    if (jj == ii) continue;
    const Dimension oj = jj * kUnicycleStateDim;
    const double theta = x(oj + kHeading);
    const Vector2d axis(std::cos(theta), std::sin(theta));
    const Vector2d axis_dot(-std::sin(theta), std::cos(theta));
    const auto* o = w.OverrideFor(jj);
    const double threshold = o ? o->threshold : w.proximity_threshold;
    for (double s : o ? o->offsets : std::vector<double>{0.0}) {
      const Vector2d delta = p - Position(x, jj) - s * axis;
      const double r = delta.norm();
      if (r >= threshold || r < kMinSeparation) continue;
      const Vector2d unit = delta / r;
      const double gap = threshold - r;
      const Vector2d grad = -2.0 * w.proximity_weight * gap * unit;
      const Matrix2d hess =
          2.0 * w.proximity_weight *
          (unit * unit.transpose() -
           gap / r * (Matrix2d::Identity() - unit * unit.transpose()));

      // Jacobian of d with respect to (p, p_j, theta_j).
      Eigen::Matrix<double, 2, Eigen::Dynamic> jac =
          Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, xdim);
      jac.block<2, 2>(0, px) += Matrix2d::Identity();
      jac.block<2, 2>(0, oj + kPosX) -= Matrix2d::Identity();
      jac.col(oj + kHeading) -= s * axis_dot;

      q.state_grad.noalias() += jac.transpose() * grad;
      q.state_hess.noalias() += jac.transpose() * hess * jac;
      // d'' along theta_j is s (cos theta_j, sin theta_j).
      q.state_hess(oj + kHeading, oj + kHeading) += s * grad.dot(axis);
    }
  }

  // Speed bounds.
  if (v > w.max_speed) {
    q.state_grad(vx) += 2.0 * w.speed_bound_weight * (v - w.max_speed);
    q.state_hess(vx, vx) += 2.0 * w.speed_bound_weight;
  }
  if (v < w.min_speed) {
    q.state_grad(vx) -= 2.0 * w.speed_bound_weight * (w.min_speed - v);
    q.state_hess(vx, vx) += 2.0 * w.speed_bound_weight;
  }

  // Own control only; other players' controls do not enter this cost.
  for (PlayerIndex jj = 0; jj < num_players; jj++) {
    if (jj == ii) {
      q.control_hess.push_back(2.0 * w.control_weight);
      q.control_grad.push_back(2.0 * w.control_weight * us[ii]);
    } else {
      q.control_hess.push_back(MatrixXd::Zero(us[jj].size(), us[jj].size()));
      q.control_grad.push_back(VectorXd::Zero(us[jj].size()));
    }
  }
  return q;
}

QuadraticGameCost::QuadraticGameCost(std::vector<QuadraticCostStage> stages)
    : stages_(std::move(stages)) {
  if (stages_.empty()) throw std::invalid_argument("no cost stages");
}

double QuadraticGameCost::Evaluate(PlayerIndex ii, int stage, const VectorXd& x,
                                   const StageControls& us) const {
  return StageCost(stages_.at(stage).players[ii], x, us);
}

PlayerStageCost QuadraticGameCost::Quadraticize(PlayerIndex ii, int stage,
                                                const VectorXd& x,
                                                const StageControls& us) const {
  const PlayerStageCost& c = stages_.at(stage).players[ii];
  PlayerStageCost q = c;
  q.state_grad = c.state_hess * x + c.state_grad;
  for (PlayerIndex jj = 0; jj < us.size(); jj++)
    q.control_grad[jj] = c.control_hess[jj] * us[jj] + c.control_grad[jj];
  return q;
}

}  // namespace hybrid_games
