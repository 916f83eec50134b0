#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sif/mapping.hpp"

namespace sif {

inline constexpr std::uint64_t kDefaultPropertySeed = 24301;
inline constexpr std::size_t kDefaultPropertySamples = 1000;

/// One failed sampled check. For scalability, `lhs` is alpha*T_i(x) and `rhs` is T_i(alpha*x);
/// for monotonicity `lhs` is T_i(x1) and `rhs` is T_i(x2); for positivity `lhs` is T_i(x).
struct PropertyViolation {
  std::string property;
  std::size_t coordinate = 0;
  Vec input;
  Vec other;  ///< second point of a monotone pair, empty otherwise
  double scale = 0.0;  ///< alpha (scalability) or c (homogeneity), 0 otherwise
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyReport {
  std::string name;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyViolation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// Samples x log-uniformly in [1e-6, 1e3]^N and alpha uniformly in (1, 10], and records every
/// violation of scalability, monotonicity and strict positivity. T(0) is always checked.
PropertyReport check_standard_properties(const InterferenceMapping& m,
                                         std::size_t samples = kDefaultPropertySamples,
                                         std::uint64_t seed = kDefaultPropertySeed);

}  // namespace sif
