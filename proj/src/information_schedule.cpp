#include <hybrid_games/information_schedule.h>

#include <stdexcept>
#include <string>

namespace hybrid_games {

int InformationSchedule::PeriodOf(int stage) const {
  for (int jj = 0; jj < static_cast<int>(periods.size()); jj++)
    if (periods[jj].Contains(stage)) return jj;
  throw std::out_of_range("stage " + std::to_string(stage) +
                          " not covered by schedule");
}

void InformationSchedule::Validate(int horizon) const {
  if (periods.empty()) throw std::invalid_argument("schedule has no periods");
  int expected_first = 0;
  int occluded = 0;
  int visible = 0;
  for (std::size_t jj = 0; jj < periods.size(); jj++) {
    const Period& p = periods[jj];
    if (p.first != expected_first || p.last < p.first)
      throw std::invalid_argument("period " + std::to_string(jj) +
                                  " is not contiguous with its predecessor");
    if (jj > 0 && periods[jj - 1].mode == p.mode)
      throw std::invalid_argument("periods " + std::to_string(jj - 1) + " and " +
                                  std::to_string(jj) + " share a mode");
    (p.mode == InformationMode::kOpenLoop ? occluded : visible)++;
    expected_first = p.last + 1;
  }
  if (expected_first != horizon)
    throw std::invalid_argument("schedule covers " +
                                std::to_string(expected_first) +
                                " stages, game has " + std::to_string(horizon));
  if (occluded != num_occluded || visible != num_visible)
    throw std::invalid_argument("schedule period counts are inconsistent");
}

InformationSchedule InformationSchedule::SinglePeriod(int horizon,
                                                      InformationMode mode) {
  return PartitionFromFlags(
      std::vector<bool>(horizon, mode == InformationMode::kOpenLoop));
}

InformationSchedule PartitionFromFlags(const std::vector<bool>& occluded) {
  if (occluded.empty())
    throw std::invalid_argument("cannot partition an empty flag sequence");

  InformationSchedule schedule;
  const int horizon = static_cast<int>(occluded.size());
  int start = 0;
  for (int kk = 1; kk <= horizon; kk++) {
    if (kk < horizon && occluded[kk] == occluded[start]) continue;
    const auto mode = occluded[start] ? InformationMode::kOpenLoop
                                      : InformationMode::kFeedback;
    schedule.periods.push_back(Period{start, kk - 1, mode});
    (occluded[start] ? schedule.num_occluded : schedule.num_visible)++;
    start = kk;
  }
  return schedule;
}

std::vector<bool> FlattenSchedule(const InformationSchedule& schedule) {
  std::vector<bool> flags(schedule.Horizon(), false);
  for (const auto& p : schedule.periods)
    for (int kk = p.first; kk <= p.last; kk++)
      flags[kk] = p.mode == InformationMode::kOpenLoop;
  return flags;
}

}  // namespace hybrid_games
