#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sif/vector.hpp"

namespace sif {

/// Invalid scenario data. `field()` is a JSON-pointer-style location such as
/// "/load/assignment/1" so file front ends can point at the offending entry.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Load-coupled OFDMA network: M base stations sharing K resource blocks of bandwidth B.
///
/// All quantities are linear (gains, Watt). Base station i serves the users listed in
/// `assignment[i]`; the lists partition {0, ..., N-1}.
struct LoadScenario {
  std::vector<std::vector<std::size_t>> assignment;
  std::vector<Vec> gains;  ///< gains[i][j]: base station i -> user j
  Vec demands;             ///< bits/s per user
  double resource_blocks = 0.0;
  double rb_bandwidth = 0.0;  ///< Hz
  double noise = 0.0;         ///< Watt per resource block
  Vec power;                  ///< Watt per resource block, per base station
  std::optional<Vec> rate_caps;  ///< bits/s per resource block, per base station

  std::size_t num_base_stations() const noexcept { return power.size(); }
  std::size_t num_users() const noexcept { return demands.size(); }

  /// Throws ScenarioError naming the first violated field.
  void validate() const;

  bool operator==(const LoadScenario&) const = default;
};

/// Per-resource-block achievable rate of base station i towards user j at load x (bits/s).
double rate_per_rb(const LoadScenario& s, std::span<const double> x, std::size_t i, std::size_t j);

/// Load needed by each base station to serve its users at the interference level implied by x.
Vec load_eval(const LoadScenario& s, std::span<const double> x);

/// As load_eval, with every user's per-RB rate capped at rate_caps[i].
Vec capped_load_eval(const LoadScenario& s, std::span<const double> x);

}  // namespace sif
