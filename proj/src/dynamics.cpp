#include <hybrid_games/dynamics.h>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hybrid_games {

UnicycleVector UnicycleStep(const UnicycleVector& state, const Vector2d& control,
                            double dt) {
  const double v = state(kSpeed);
  const double theta = state(kHeading);
  UnicycleVector next = state;
  next(kPosX) += dt * v * std::cos(theta);
  next(kPosY) += dt * v * std::sin(theta);
  next(kSpeed) += dt * control(kAccel);
  next(kHeading) += dt * control(kOmega);
  return next;
}

UnicycleDynamics::UnicycleDynamics(std::size_t num_players, double dt)
    : num_players_(num_players), dt_(dt) {
  if (num_players == 0) throw std::invalid_argument("need at least one player");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
}

VectorXd UnicycleDynamics::Step(int, const VectorXd& x,
                                const StageControls& us) const {
  assert(us.size() == num_players_);
  VectorXd next(x.size());
  for (PlayerIndex ii = 0; ii < num_players_; ii++) {
    const Dimension offset = ii * kUnicycleStateDim;
    next.segment<kUnicycleStateDim>(offset) = UnicycleStep(
        x.segment<kUnicycleStateDim>(offset), us[ii].head<kUnicycleControlDim>(), dt_);
  }
  return next;
}

LinearDynamicsStage UnicycleDynamics::Linearize(int, const VectorXd& x,
                                                const StageControls&) const {
  const Dimension xdim = StateDim();
  LinearDynamicsStage lin;
  lin.A = MatrixXd::Identity(xdim, xdim);
  lin.Bs.assign(num_players_, MatrixXd::Zero(xdim, kUnicycleControlDim));
  for (PlayerIndex ii = 0; ii < num_players_; ii++) {
    const Dimension o = ii * kUnicycleStateDim;
    const double v = x(o + kSpeed);
    const double c = std::cos(x(o + kHeading));
    const double s = std::sin(x(o + kHeading));

    lin.A(o + kPosX, o + kSpeed) = dt_ * c;
    lin.A(o + kPosX, o + kHeading) = -dt_ * v * s;
    lin.A(o + kPosY, o + kSpeed) = dt_ * s;
    lin.A(o + kPosY, o + kHeading) = dt_ * v * c;

    lin.Bs[ii](o + kHeading, kOmega) = dt_;
    lin.Bs[ii](o + kSpeed, kAccel) = dt_;
  }
  return lin;
}

LinearGameDynamics::LinearGameDynamics(std::vector<LinearDynamicsStage> stages)
    : stages_(std::move(stages)) {
  if (stages_.empty()) throw std::invalid_argument("no dynamics stages");
}

std::vector<Dimension> LinearGameDynamics::ControlDims() const {
  std::vector<Dimension> dims;
  for (const auto& B : stages_.front().Bs) dims.push_back(B.cols());
  return dims;
}

VectorXd LinearGameDynamics::Step(int stage, const VectorXd& x,
                                  const StageControls& us) const {
  const auto& lin = stages_.at(stage);
  VectorXd next = lin.A * x;
  for (PlayerIndex ii = 0; ii < us.size(); ii++) next.noalias() += lin.Bs[ii] * us[ii];
  return next;
}

LinearDynamicsStage LinearGameDynamics::Linearize(int stage, const VectorXd&,
                                                  const StageControls&) const {
  return stages_.at(stage);
}

}  // namespace hybrid_games
