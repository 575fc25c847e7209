#include <hybrid_games/trajectory.h>

#include <cassert>

namespace hybrid_games {

bool TrajectoryIterate::AllFinite() const {
  for (const auto& x : states)
    if (!x.allFinite()) return false;
  for (const auto& us : controls)
    for (const auto& u : us)
      if (!u.allFinite()) return false;
  return true;
}

double MaxStateChange(const TrajectoryIterate& a, const TrajectoryIterate& b,
                      int* argmax) {
  assert(a.states.size() == b.states.size());
  double worst = 0.0;
  int worst_stage = 0;
  for (int kk = 0; kk < a.Horizon(); kk++) {
    const double change = (a.states[kk] - b.states[kk]).lpNorm<Eigen::Infinity>();
    if (change > worst) {
      worst = change;
      worst_stage = kk;
    }
  }
  if (argmax) *argmax = worst_stage;
  return worst;
}

double MaxControlChange(const TrajectoryIterate& a, const TrajectoryIterate& b) {
  assert(a.controls.size() == b.controls.size());
  double worst = 0.0;
  for (std::size_t kk = 0; kk < a.controls.size(); kk++)
    for (std::size_t ii = 0; ii < a.controls[kk].size(); ii++)
      worst = std::max(worst, (a.controls[kk][ii] - b.controls[kk][ii])
                                  .lpNorm<Eigen::Infinity>());
  return worst;
}

ControlSequence ZeroControls(int horizon, const std::vector<Dimension>& udims) {
  StageControls zero;
  for (Dimension udim : udims) zero.push_back(VectorXd::Zero(udim));
  return ControlSequence(horizon, zero);
}

}  // namespace hybrid_games
