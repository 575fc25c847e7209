#include <hybrid_games/svg_plot.h>
#include <hybrid_games/visibility.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hybrid_games {

namespace {

constexpr double kPixelsPerMeter = 8.0;
constexpr double kMarginMeters = 8.0;
constexpr std::array<const char*, 6> kColors = {"#2e8b57", "#1f4e9c", "#8b5a2b",
                                                "#d2691e", "#7b3fa0", "#b22222"};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Frame {
  double xmin, xmax, ymin, ymax;

  double X(double x) const { return (x - xmin) * kPixelsPerMeter; }
  double Y(double y) const { return (ymax - y) * kPixelsPerMeter; }
  std::string Point(const Vector2d& p) const { return Fmt(X(p.x())) + "," + Fmt(Y(p.y())); }
};

Frame FitFrame(const TrajectoryIterate& trajectory, const ScenarioConfig& config) {
  Frame f{1e300, -1e300, 1e300, -1e300};
  auto add = [&f](const Vector2d& p) {
    f.xmin = std::min(f.xmin, p.x());
    f.xmax = std::max(f.xmax, p.x());
    f.ymin = std::min(f.ymin, p.y());
    f.ymax = std::max(f.ymax, p.y());
  };
  for (const auto& x : trajectory.states)
    for (PlayerIndex ii = 0; ii < config.NumPlayers(); ii++)
      for (const auto& c : PlayerRectangle(x, ii, config.players[ii].shape).Corners()) add(c);
  for (const auto& o : config.static_occluders)
    for (const auto& c : o.Corners()) add(c);
  if (f.xmin > f.xmax) f = {0.0, 0.0, 0.0, 0.0};
  f.xmin -= kMarginMeters;
  f.xmax += kMarginMeters;
  f.ymin -= kMarginMeters;
  f.ymax += kMarginMeters;
  return f;
}

std::string Polygon(const Frame& f, const OrientedRectangle& rect, const char* fill,
                    double opacity) {
  std::string pts;
  for (const auto& c : rect.Corners()) pts += f.Point(c) + " ";
  pts.pop_back();
  return "  <polygon points=\"" + pts + "\" fill=\"" + fill + "\" fill-opacity=\"" +
         Fmt(opacity) + "\" stroke=\"#222\" stroke-width=\"0.8\"/>\n";
}

}  // namespace

std::string RenderSvg(const TrajectoryIterate& trajectory, const ScenarioConfig& config) {
  const Frame f = FitFrame(trajectory, config);
  const double width = (f.xmax - f.xmin) * kPixelsPerMeter;
  const double height = (f.ymax - f.ymin) * kPixelsPerMeter;
  const double reach = (f.xmax - f.xmin) + (f.ymax - f.ymin);

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Fmt(width) +
                    "\" height=\"" + Fmt(height) + "\" viewBox=\"0 0 " + Fmt(width) +
                    " " + Fmt(height) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#f4f4f0\"/>\n";

  // Lane center-lines, each drawn once.
  std::vector<LaneGeometry> lanes;
  for (const auto& p : config.players) {
    const LaneGeometry& lane = p.weights.lane;
    const bool seen = std::any_of(lanes.begin(), lanes.end(), [&](const LaneGeometry& l) {
      return std::abs(l.SignedDistance(lane.point)) < 1e-9 &&
             std::abs(std::abs(l.direction.dot(lane.direction)) - 1.0) < 1e-9;
    });
    if (seen) continue;
    lanes.push_back(lane);
    const Vector2d a = lane.point - reach * lane.direction;
    const Vector2d b = lane.point + reach * lane.direction;
    svg += "  <line x1=\"" + Fmt(f.X(a.x())) + "\" y1=\"" + Fmt(f.Y(a.y())) +
           "\" x2=\"" + Fmt(f.X(b.x())) + "\" y2=\"" + Fmt(f.Y(b.y())) +
           "\" stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"8,6\"/>\n";
  }

  for (const auto& o : config.static_occluders) svg += Polygon(f, o, "#4a6fa5", 0.9);

  for (PlayerIndex ii = 0; ii < config.NumPlayers(); ii++) {
    const char* color = kColors[ii % kColors.size()];
    // Runs of consecutive segments that share the occluded flag of their
    // starting stage.
    int kk = 0;
    while (kk + 1 < trajectory.Horizon()) {
      const bool occluded = kk < static_cast<int>(trajectory.occluded.size()) &&
                            trajectory.occluded[kk];
      std::string pts = f.Point(PlayerRectangle(trajectory.states[kk], ii,
                                                config.players[ii].shape).center);
      while (kk + 1 < trajectory.Horizon()) {
        const bool flag = kk < static_cast<int>(trajectory.occluded.size()) &&
                          trajectory.occluded[kk];
        if (flag != occluded) break;
        kk++;
        pts += " " + f.Point(PlayerRectangle(trajectory.states[kk], ii,
                                             config.players[ii].shape).center);
      }
      svg += std::string("  <polyline points=\"") + pts + "\" fill=\"none\" stroke=\"" +
             color + "\" stroke-width=\"2\"" +
             (occluded ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
    }
    for (int mm = 0; mm < trajectory.Horizon(); mm += kPlotMarkerInterval)
      svg += Polygon(f, PlayerRectangle(trajectory.states[mm], ii, config.players[ii].shape),
                     color, 0.6);
  }
  svg += "</svg>\n";
  return svg;
}

void EmitPlot(const TrajectoryIterate& trajectory, const ScenarioConfig& config,
              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << RenderSvg(trajectory, config);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hybrid_games
