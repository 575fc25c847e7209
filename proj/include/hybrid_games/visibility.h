#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Occlusion detection between rectangular agents. Two players see each other
// when some segment between a point of one rectangle and a point of the other
// avoids every occluder. The quantifier over points is approximated by
// sampling each rectangle's boundary (corners plus a nested low-discrepancy
// set of points on every edge), so visibility is under-approximated.
//
// A stage is flagged occluded iff any of the configured interacting pairs is
// blocked; flags are then run-length encoded into an InformationSchedule.
//
///////////////////////////////////////////////////////////////////////////////

#include <hybrid_games/geometry.h>
#include <hybrid_games/information_schedule.h>
#include <hybrid_games/trajectory.h>

#include <utility>
#include <vector>

namespace hybrid_games {

inline constexpr int kDefaultSamplesPerEdge = 3;

struct RectangleShape {
  double length = 1.0;
  double width = 1.0;
};

struct OccluderSet {
  std::vector<OrientedRectangle> static_rectangles;
  // Players whose bodies block the view of others. A player never blocks a
  // pair that includes itself.
  std::vector<PlayerIndex> agent_occluders;
};

using PlayerPair = std::pair<PlayerIndex, PlayerIndex>;

// Boundary sample points: the 4 corners, then |samples_per_edge| interior
// points per edge. The interior points for k samples are a prefix of those
// for k + 1.
std::vector<Vector2d> BoundarySamples(const OrientedRectangle& rect,
                                      int samples_per_edge);

bool PairVisible(const OrientedRectangle& a, const OrientedRectangle& b,
                 const std::vector<OrientedRectangle>& occluders,
                 int samples_per_edge = kDefaultSamplesPerEdge);

// Rectangle of player |ii| posed from a stacked unicycle state.
OrientedRectangle PlayerRectangle(const VectorXd& x, PlayerIndex ii,
                                  const RectangleShape& shape);

std::vector<PlayerPair> AllPairs(std::size_t num_players);

struct OcclusionQuery {
  std::vector<RectangleShape> shapes;  // one per player
  OccluderSet occluders;
  std::vector<PlayerPair> interacting_pairs;  // empty means all pairs
  int samples_per_edge = kDefaultSamplesPerEdge;
};

// Per-stage occlusion flags for a trajectory. Throws std::invalid_argument on
// an out-of-range player index.
std::vector<bool> OcclusionFlags(const TrajectoryIterate& trajectory,
                                 const OcclusionQuery& query);

// Computes the flags, stores them in |trajectory| and returns the schedule.
InformationSchedule FindOcclusions(TrajectoryIterate& trajectory,
                                   const OcclusionQuery& query);

}  // namespace hybrid_games
