#include <hybrid_games/dynamics.h>
#include <hybrid_games/visibility.h>

#include <stdexcept>
#include <string>

namespace hybrid_games {

namespace {

// k-th element of the base-2 van der Corput sequence, k >= 1.
double VanDerCorput(int k) {
  double value = 0.0;
  double denom = 1.0;
  while (k > 0) {
    denom *= 2.0;
    value += (k & 1) / denom;
    k >>= 1;
  }
  return value;
}

}  // namespace

std::vector<Vector2d> BoundarySamples(const OrientedRectangle& rect,
                                      int samples_per_edge) {
  const auto corners = rect.Corners();
  std::vector<Vector2d> points(corners.begin(), corners.end());
  for (int ee = 0; ee < 4; ee++) {
    const Vector2d& from = corners[ee];
    const Vector2d& to = corners[(ee + 1) % 4];
    for (int kk = 1; kk <= samples_per_edge; kk++)
      points.push_back(from + VanDerCorput(kk) * (to - from));
  }
  return points;
}

bool PairVisible(const OrientedRectangle& a, const OrientedRectangle& b,
                 const std::vector<OrientedRectangle>& occluders,
                 int samples_per_edge) {
  if (occluders.empty()) return true;
  const auto from = BoundarySamples(a, samples_per_edge);
  const auto to = BoundarySamples(b, samples_per_edge);
  for (const auto& p : from) {
    for (const auto& q : to) {
      bool blocked = false;
      for (const auto& occluder : occluders) {
        if (SegmentIntersectsRectangle(p, q, occluder)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) return true;
    }
  }
  return false;
}

OrientedRectangle PlayerRectangle(const VectorXd& x, PlayerIndex ii,
                                  const RectangleShape& shape) {
  const auto s = x.segment<kUnicycleStateDim>(ii * kUnicycleStateDim);
  return OrientedRectangle{Vector2d(s(kPosX), s(kPosY)), shape.length,
                           shape.width, s(kHeading)};
}

std::vector<PlayerPair> AllPairs(std::size_t num_players) {
  std::vector<PlayerPair> pairs;
  for (PlayerIndex ii = 0; ii < num_players; ii++)
    for (PlayerIndex jj = ii + 1; jj < num_players; jj++) pairs.emplace_back(ii, jj);
  return pairs;
}

std::vector<bool> OcclusionFlags(const TrajectoryIterate& trajectory,
                                 const OcclusionQuery& query) {
  const std::size_t num_players = query.shapes.size();
  const auto pairs =
      query.interacting_pairs.empty() ? AllPairs(num_players) : query.interacting_pairs;
  for (const auto& [ii, jj] : pairs)
    if (ii >= num_players || jj >= num_players || ii == jj)
      throw std::invalid_argument("bad interacting pair (" + std::to_string(ii) +
                                  ", " + std::to_string(jj) + ")");
  for (PlayerIndex kk : query.occluders.agent_occluders)
    if (kk >= num_players)
      throw std::invalid_argument("agent occluder index " + std::to_string(kk) +
                                  " out of range");

  std::vector<bool> flags(trajectory.Horizon(), false);
  std::vector<OrientedRectangle> bodies(num_players);
  std::vector<OrientedRectangle> blockers;
  for (int kk = 0; kk < trajectory.Horizon(); kk++) {
    const VectorXd& x = trajectory.states[kk];
    for (PlayerIndex ii = 0; ii < num_players; ii++)
      bodies[ii] = PlayerRectangle(x, ii, query.shapes[ii]);

    for (const auto& [ii, jj] : pairs) {
      blockers = query.occluders.static_rectangles;
      for (PlayerIndex occ : query.occluders.agent_occluders)
        if (occ != ii && occ != jj) blockers.push_back(bodies[occ]);
      if (!PairVisible(bodies[ii], bodies[jj], blockers, query.samples_per_edge)) {
        flags[kk] = true;
        break;
      }
    }
  }
  return flags;
}

InformationSchedule FindOcclusions(TrajectoryIterate& trajectory,
                                   const OcclusionQuery& query) {
  trajectory.occluded = OcclusionFlags(trajectory, query);
  return PartitionFromFlags(trajectory.occluded);
}

}  // namespace hybrid_games
