#pragma once

#include <vector>

namespace hybrid_games {

enum class InformationMode { kOpenLoop, kFeedback };

// A maximal run of stages sharing one information structure. Indices are
// 0-based and inclusive on both ends.
struct Period {
  int first = 0;
  int last = 0;
  InformationMode mode = InformationMode::kFeedback;

  int Length() const { return last - first + 1; }
  bool Contains(int stage) const { return stage >= first && stage <= last; }
  bool operator==(const Period&) const = default;
};

struct InformationSchedule {
  std::vector<Period> periods;
  int num_occluded = 0;  // periods in open-loop mode
  int num_visible = 0;   // periods in feedback mode

  int Horizon() const { return periods.empty() ? 0 : periods.back().last + 1; }

  // Index of the period containing this stage.
  int PeriodOf(int stage) const;

  // Throws std::invalid_argument unless the periods tile [0, horizon)
  // contiguously, alternate in mode, and the counts agree.
  void Validate(int horizon) const;

  static InformationSchedule SinglePeriod(int horizon, InformationMode mode);
};

// Run-length encodes per-stage flags (true = occluded) into periods.
// Throws std::invalid_argument on an empty flag sequence.
InformationSchedule PartitionFromFlags(const std::vector<bool>& occluded);

// Inverse of PartitionFromFlags.
std::vector<bool> FlattenSchedule(const InformationSchedule& schedule);

}  // namespace hybrid_games
