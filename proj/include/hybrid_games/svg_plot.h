#pragma once

#include <hybrid_games/scenario.h>
#include <hybrid_games/trajectory.h>

#include <string>

namespace hybrid_games {

inline constexpr int kPlotMarkerInterval = 25;

// Static top-down plot: lane center-lines, static occluders, one
// polyline per player (dashed over occluded stages) and the player rectangles
// at every 25th stage starting from the first. Output depends only on the
// inputs.
std::string RenderSvg(const TrajectoryIterate& trajectory,
                      const ScenarioConfig& config);

// Throws std::runtime_error on I/O failure.
void EmitPlot(const TrajectoryIterate& trajectory, const ScenarioConfig& config,
              const std::string& path);

}  // namespace hybrid_games
