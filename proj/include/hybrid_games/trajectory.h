#pragma once

#include <hybrid_games/types.h>

#include <vector>

namespace hybrid_games {

// States x_0..x_{T-1}, the controls applied at each of those stages and the
// per-stage occlusion flags. The state reached after the last control is not
// stored since no cost is attached to it.
struct TrajectoryIterate {
  std::vector<VectorXd> states;
  ControlSequence controls;
  std::vector<bool> occluded;

  int Horizon() const { return static_cast<int>(states.size()); }
  bool AllFinite() const;
};

// Max over stages of the sup-norm of the state difference; the stage that
// attains it is written to |argmax| when non-null.
double MaxStateChange(const TrajectoryIterate& a, const TrajectoryIterate& b,
                      int* argmax = nullptr);
double MaxControlChange(const TrajectoryIterate& a, const TrajectoryIterate& b);

ControlSequence ZeroControls(int horizon, const std::vector<Dimension>& udims);

}  // namespace hybrid_games
