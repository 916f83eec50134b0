#pragma once

#include <cstddef>
#include <limits>
#include <string_view>

#include "sif/asymptotic.hpp"
#include "sif/matrix.hpp"
#include "sif/norm.hpp"
#include "sif/solvers.hpp"

namespace sif {

enum class SpectralMethod { linear_power, budget_ladder };

std::string_view to_string(SpectralMethod method) noexcept;

struct SpectralOptions {
  /// Collatz-Wielandt stopping width, relative to max(1, midpoint).
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  /// Budgets for the ladder route; 1 / c* is taken at each.
  Vec budgets{1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15, 1e16};
  double ladder_rtol = 1e-6;
  MonotoneNorm ladder_norm = MonotoneNorm::max();
  NormalizedOptions canonical;
};

struct SpectralResult {
  SpectralMethod method = SpectralMethod::linear_power;
  double rho = 0.0;
  /// Certified bracket. The ladder route only certifies the upper end.
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool converged = false;
  /// Bracket did not close; rho is the upper bound (linear route) or the last ladder value.
  bool flagged = false;
  std::size_t iterations = 0;
  Vec budgets;
  Vec ladder_values;  ///< 1 / c* per budget
  bool ladder_monotone = true;
};

/// Spectral radius of a nonnegative matrix by Collatz-Wielandt bracketing of power iterates,
/// run separately on each irreducible diagonal block. A stalled bracket (periodic blocks)
/// switches to A + sI with s near rho.
SpectralResult collatz_wielandt(const Matrix& a, double tol = 1e-9, std::size_t max_iter = 100000);

/// rho(T_inf) as the limit of 1 / U(p_bar) along an increasing budget ladder. Each value is an
/// upper bound; the first rung agreeing with its predecessor within ladder_rtol is returned.
SpectralResult budget_ladder_radius(const InterferenceMapping& base, const SpectralOptions& opts = {});

/// Dispatch: linear_power needs exact-linear provenance. budget_ladder runs on `base`, or on the
/// mapping a numeric asymptotic was built from when `base` is null.
SpectralResult spectral_radius(const AsymptoticMapping& a, SpectralMethod method,
                               const InterferenceMapping* base = nullptr, const SpectralOptions& opts = {});

}  // namespace sif
