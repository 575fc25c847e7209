#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybrid_games {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Vector2d = Eigen::Vector2d;
using Matrix2d = Eigen::Matrix2d;

using PlayerIndex = std::size_t;
using Dimension = Eigen::Index;

// Controls indexed first by stage, then by player.
using StageControls = std::vector<VectorXd>;
using ControlSequence = std::vector<StageControls>;

// Raised when a solve cannot proceed: singular coupling systems, non-PD
// control costs, non-finite rollouts. Stage and period indices are 0-based
// and attached whenever the failure can be localized.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what,
                       std::optional<int> stage = std::nullopt,
                       std::optional<int> period = std::nullopt);

  std::optional<int> stage() const { return stage_; }
  std::optional<int> period() const { return period_; }

  SolverError WithPeriod(int period) const;

 private:
  std::string message_;
  std::optional<int> stage_;
  std::optional<int> period_;
};

}  // namespace hybrid_games
