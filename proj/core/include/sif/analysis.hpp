#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sif/asymptotic.hpp"
#include "sif/load_scenario.hpp"
#include "sif/mapping.hpp"
#include "sif/norm.hpp"
#include "sif/solvers.hpp"
#include "sif/spectral.hpp"

namespace sif {

/// |rho - 1| below this is reported as undecidable rather than as a boolean.
inline constexpr double kNearCriticalBand = 1e-6;

enum class Verdict { feasible, infeasible, near_critical };

std::string_view to_string(Verdict v) noexcept;

struct FeasibilityVerdict {
  double rho = 0.0;
  bool feasible = false;  ///< rho < 1
  double margin = 0.0;    ///< 1 - rho
  Verdict verdict = Verdict::infeasible;
  SpectralResult spectral;
  std::optional<FixedPointResult> fixed_point;
};

struct FeasibilityOptions {
  SpectralOptions spectral;
  FixedPointOptions fixed_point;
};

/// Fix(T) is nonempty iff rho(T_inf) < 1. `a` must be the asymptotic mapping of `m`; exact
/// routes use Collatz-Wielandt, numeric ones the budget ladder on `m`.
FeasibilityVerdict feasibility_check(const InterferenceMapping& m, const AsymptoticMapping& a, bool compute_fixed_point,
                                     const FeasibilityOptions& opts = {});

struct UnitBallTest {
  EigenResult eigen;      ///< (x', lambda') with T(x') = lambda' x', ||x'|| = 1
  bool fixed_point_in_ball = false;  ///< lambda' <= 1
};

/// A fixed point with ||x*|| <= 1 exists iff the conditional eigenvalue of T itself is <= 1.
UnitBallTest unit_ball_fixed_point_test(const InterferenceMapping& m, const MonotoneNorm& norm,
                                        const NormalizedOptions& opts = {});

/// ||T(0)||_a / lambda_inf. Throws std::invalid_argument unless lambda_inf > 0.
double transition_point(const InterferenceMapping& m, const MonotoneNorm& norm_a, double lambda_inf);

enum class Regime { low_power, high_power };

std::string_view to_string(Regime r) noexcept;

struct SweepRow {
  double p_bar = 0.0;
  double utility = 0.0;             ///< U(p_bar) = c*
  Vec power;                        ///< P(p_bar) = p*
  double ee = 0.0;                  ///< U / ||P||_b
  double utility_bound = 0.0;       ///< min{p_bar / ||T(0)||_a, 1 / lambda_inf}
  double ee_bound = 0.0;            ///< min{1 / ||T(0)||_b, alpha / (lambda_inf p_bar)}
  Regime regime = Regime::low_power;
  bool ok = false;
  SolveReport report;
};

struct SweepResult {
  double lambda_inf = 0.0;
  std::optional<double> transition;  ///< absent when lambda_inf = 0
  double alpha = 0.0;                ///< ||x||_a <= alpha ||x||_b
  double t0_norm_a = 0.0;
  double t0_norm_b = 0.0;
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;
};

/// Solves the canonical problem at every budget of a strictly increasing positive grid and
/// fills utility, power, energy efficiency, both upper bounds and the regime. Row failures are
/// marked (ok = false) and the sweep continues.
SweepResult sweep(const InterferenceMapping& m, double lambda_inf, const MonotoneNorm& norm_a,
                  const MonotoneNorm& norm_b, std::span<const double> grid, const NormalizedOptions& opts = {});

/// As above with lambda_inf = rho(a) computed up front.
SweepResult sweep(const InterferenceMapping& m, const AsymptoticMapping& a, const MonotoneNorm& norm_a,
                  const MonotoneNorm& norm_b, std::span<const double> grid, const NormalizedOptions& opts = {});

struct TailFit {
  std::size_t points = 0;
  double utility_slope = 0.0;
  double ee_slope = 0.0;
  double utility_deviation = 0.0;  ///< |slope - expected|
  double ee_deviation = 0.0;
};

struct ScalingDiagnostics {
  std::optional<TailFit> low;   ///< p_bar <= p_T / 100; expected slopes U: 1, E: 0
  std::optional<TailFit> high;  ///< p_bar >= 100 p_T; expected slopes U: 0, E: -1
  /// |1 / U(p_max) - lambda_inf| / lambda_inf at the largest successful row.
  std::optional<double> ladder_gap;
  bool sufficient_span = false;
  std::string note;
};

/// Log-log least-squares slopes of U and E on the tails two decades either side of p_T.
ScalingDiagnostics scaling_diagnostics(const SweepResult& sweep);

struct RankedStation {
  std::size_t base_station = 0;
  double load = 0.0;
  bool overloaded = false;  ///< load > 1
};

struct BottleneckResult {
  FeasibilityVerdict verdict;
  /// Descending by load (ties by index); absent unless the scenario is feasible and the load
  /// fixed point converged.
  std::optional<std::vector<RankedStation>> ranking;
};

BottleneckResult bottleneck_ranking(const LoadScenario& s, const FeasibilityOptions& opts = {});

}  // namespace sif
