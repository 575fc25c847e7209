#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// CSV trajectory format: a header row, then one row per stage
//
//   t, time_s, occluded, then for each player i
//   p<i>_px, p<i>_py, p<i>_v, p<i>_theta, p<i>_omega_cmd, p<i>_accel_cmd
//
// with t 0-based, occluded as 0/1 and numbers printed with 9 significant
// digits.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/run_scenario.h>
#include <hybrid_games/trajectory.h>

#include <string>

namespace hybrid_games {

std::string TrajectoryCsv(const TrajectoryIterate& trajectory, double dt);

// Throws std::runtime_error on I/O failure.
void ExportTrajectory(const TrajectoryIterate& trajectory, double dt,
                      const std::string& path);

// Reads back a file written by ExportTrajectory. Throws std::runtime_error on
// malformed input.
TrajectoryIterate ImportTrajectory(const std::string& path);
TrajectoryIterate ParseTrajectoryCsv(const std::string& text);

std::string ReportJson(const RunReport& report);
void WriteReport(const RunReport& report, const std::string& path);

std::string ComparisonJson(const ComparisonReport& comparison);

}  // namespace hybrid_games
