#include <hybrid_games/dynamics.h>
#include <hybrid_games/trajectory_io.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hybrid_games {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void WriteFile(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> SplitCommas(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

nlohmann::json MetricsJson(const ScenarioMetrics& m) {
  nlohmann::json crossing = nlohmann::json::array();
  for (const auto& c : m.crossing_stage)
    crossing.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
  return {{"min_center_distance", m.min_center_distance},
          {"overlap_count", m.overlap_count},
          {"max_lane_deviation", m.max_lane_deviation},
          {"lane_deviation", m.lane_deviation},
          {"goal_distance", m.goal_distance},
          {"speed_deviation", m.speed_deviation},
          {"crossing_stage", crossing},
          {"occluded_fraction", m.occluded_fraction}};
}

nlohmann::json ReportObject(const RunReport& r) {
  std::vector<int> occluded(r.occluded.begin(), r.occluded.end());
  return {{"scenario", r.scenario},
          {"mode", ToString(r.mode)},
          {"seed", r.seed},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"failure", r.failure},
          {"occluded", occluded},
          {"metrics", MetricsJson(r.metrics)},
          {"wall_clock_s", r.wall_clock_s}};
}

}  // namespace

std::string TrajectoryCsv(const TrajectoryIterate& trajectory, double dt) {
  const std::size_t n = trajectory.controls.empty() ? 0 : trajectory.controls.front().size();
  std::string out = "t,time_s,occluded";
  for (std::size_t ii = 0; ii < n; ii++) {
    const std::string p = ",p" + std::to_string(ii) + "_";
    out += p + "px" + p + "py" + p + "v" + p + "theta" + p + "omega_cmd" + p +
           "accel_cmd";
  }
  out += "\n";
  for (int kk = 0; kk < trajectory.Horizon(); kk++) {
    const bool occluded =
        kk < static_cast<int>(trajectory.occluded.size()) && trajectory.occluded[kk];
    out += std::to_string(kk) + "," + Num(kk * dt) + "," + (occluded ? "1" : "0");
    const VectorXd& x = trajectory.states[kk];
    for (std::size_t ii = 0; ii < n; ii++) {
      const Dimension o = ii * kUnicycleStateDim;
      for (Dimension dd = 0; dd < kUnicycleStateDim; dd++) out += "," + Num(x(o + dd));
      const VectorXd& u = trajectory.controls[kk][ii];
      out += "," + Num(u(kOmega)) + "," + Num(u(kAccel));
    }
    out += "\n";
  }
  return out;
}

void ExportTrajectory(const TrajectoryIterate& trajectory, double dt,
                      const std::string& path) {
  WriteFile(TrajectoryCsv(trajectory, dt), path);
}

TrajectoryIterate ParseTrajectoryCsv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory CSV");
  const auto header = SplitCommas(line);
  constexpr std::size_t kPerPlayer = 6;
  if (header.size() < 3 || (header.size() - 3) % kPerPlayer != 0)
    throw std::runtime_error("unexpected trajectory CSV header");
  const std::size_t n = (header.size() - 3) / kPerPlayer;

  TrajectoryIterate traj;
  int row = 1;
  while (std::getline(in, line)) {
    row++;
    if (line.empty()) continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != header.size())
      throw std::runtime_error("row " + std::to_string(row) + ": wrong field count");
    try {
      traj.occluded.push_back(std::stoi(fields[2]) != 0);
      VectorXd x(n * kUnicycleStateDim);
      StageControls us;
      for (std::size_t ii = 0; ii < n; ii++) {
        const std::size_t c = 3 + ii * kPerPlayer;
        for (Dimension dd = 0; dd < kUnicycleStateDim; dd++)
          x(ii * kUnicycleStateDim + dd) = std::stod(fields[c + dd]);
        us.push_back(Vector2d(std::stod(fields[c + 4]), std::stod(fields[c + 5])));
      }
      traj.states.push_back(x);
      traj.controls.push_back(us);
    } catch (const std::logic_error&) {
      throw std::runtime_error("row " + std::to_string(row) + ": not a number");
    }
  }
  return traj;
}

TrajectoryIterate ImportTrajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTrajectoryCsv(buffer.str());
}

std::string ReportJson(const RunReport& report) {
  return ReportObject(report).dump(2) + "\n";
}

void WriteReport(const RunReport& report, const std::string& path) {
  WriteFile(ReportJson(report), path);
}

std::string ComparisonJson(const ComparisonReport& comparison) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : comparison.runs) runs.push_back(ReportObject(run.report));
  nlohmann::json j = {
      {"runs", runs},
      {"lane_deviation_delta_openloop", comparison.lane_deviation_delta_openloop},
      {"lane_deviation_delta_feedback", comparison.lane_deviation_delta_feedback},
      {"hybrid_lane_keeping_no_worse_than_openloop",
       comparison.hybrid_lane_keeping_no_worse_than_openloop}};
  return j.dump(2) + "\n";
}

}  // namespace hybrid_games
