#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>

#include "sif/mapping.hpp"
#include "sif/norm.hpp"
#include "sif/vector.hpp"

namespace sif {

enum class StopReason { tolerance, max_iterations, divergence_guard };

std::string_view to_string(StopReason reason) noexcept;

/// Iteration diagnostics. `converged` holds exactly when `stop == StopReason::tolerance`.
struct SolveReport {
  std::size_t iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  StopReason stop = StopReason::max_iterations;
  /// The normalized iteration switched to the shifted map T(x) + s x after stalling.
  bool shifted = false;
};

struct FixedPointOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  double growth_guard = 1e12;
};

struct FixedPointResult {
  NonnegVector x;
  SolveReport report;
};

/// Plain iteration x <- T(x). On success ||x - T(x)||_inf / max(1, ||x||_inf) <= tol.
/// Stops with divergence_guard once ||x||_inf exceeds the guard (no fixed point).
FixedPointResult fixed_point(const InterferenceMapping& m, const NonnegVector& x0,
                             const FixedPointOptions& opts = {});
/// Starts from x0 = 0, where the iterates increase monotonically.
FixedPointResult fixed_point(const InterferenceMapping& m, const FixedPointOptions& opts = {});

struct NormalizedOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  /// Start vector; the default is the all-ones vector scaled onto the constraint sphere.
  std::optional<Vec> start;
};

struct CanonicalSolution {
  PositiveVector p_star;
  double c_star = 0.0;
  SolveReport report;
};

/// max c s.t. p = c T(p), ||p||_a <= p_bar, via p <- p_bar T(p) / ||T(p)||_a.
///
/// On success ||p - c T(p)||_inf / ||p||_inf <= tol with c = p_bar / ||T(p)||_a. Throws
/// std::invalid_argument if p_bar <= 0.
CanonicalSolution solve_canonical(const InterferenceMapping& m, const MonotoneNorm& norm_a, double p_bar,
                                  const NormalizedOptions& opts = {});

struct EigenPair {
  NonnegVector x;  ///< ||x||_a = 1
  double lambda = 0.0;
};

struct EigenResult {
  EigenPair pair;
  SolveReport report;
  /// The mapping sent the iterate to zero twice; lambda is reported as 0.
  bool zero_direction = false;
};

/// T(x) = lambda x, ||x||_a = 1, by x <- T(x) / ||T(x)||_a from the normalized all-ones vector.
/// Works for interference mappings and asymptotic mappings alike.
EigenResult conditional_eigen(const Mapping& m, const MonotoneNorm& norm_a, const NormalizedOptions& opts = {});

}  // namespace sif
