#include "sif/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace sif {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::feasible: return "feasible";
    case Verdict::infeasible: return "infeasible";
    case Verdict::near_critical: return "near-critical";
  }
  return "?";
}

std::string_view to_string(Regime r) noexcept {
  return r == Regime::low_power ? "low-power" : "high-power";
}

FeasibilityVerdict feasibility_check(const InterferenceMapping& m, const AsymptoticMapping& a, bool compute_fixed_point,
                                     const FeasibilityOptions& opts) {
  require_same_dim(m.dim(), a.dim(), "feasibility_check asymptotic mapping");
  FeasibilityVerdict v;
  v.spectral = a.is_linear() ? spectral_radius(a, SpectralMethod::linear_power, nullptr, opts.spectral)
                             : spectral_radius(a, SpectralMethod::budget_ladder, &m, opts.spectral);
  v.rho = v.spectral.rho;
  v.feasible = v.rho < 1.0;
  v.margin = 1.0 - v.rho;
  if (std::abs(v.rho - 1.0) < kNearCriticalBand) {
    v.verdict = Verdict::near_critical;
  } else {
    v.verdict = v.feasible ? Verdict::feasible : Verdict::infeasible;
  }
  if (compute_fixed_point && v.verdict == Verdict::feasible) v.fixed_point = fixed_point(m, opts.fixed_point);
  return v;
}

UnitBallTest unit_ball_fixed_point_test(const InterferenceMapping& m, const MonotoneNorm& norm,
                                        const NormalizedOptions& opts) {
  UnitBallTest t;
  t.eigen = conditional_eigen(m, norm, opts);
  t.fixed_point_in_ball = t.eigen.pair.lambda <= 1.0;
  return t;
}

double transition_point(const InterferenceMapping& m, const MonotoneNorm& norm_a, double lambda_inf) {
  if (!(lambda_inf > 0.0) || !std::isfinite(lambda_inf)) {
    throw std::invalid_argument("transition_point: lambda_inf must be finite and > 0");
  }
  return norm_a(m.evaluate(Vec(m.dim(), 0.0))) / lambda_inf;
}

SweepResult sweep(const InterferenceMapping& m, double lambda_inf, const MonotoneNorm& norm_a,
                  const MonotoneNorm& norm_b, std::span<const double> grid, const NormalizedOptions& opts) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty budget grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || !std::isfinite(grid[k])) throw std::invalid_argument("sweep: budgets must be finite and > 0");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw std::invalid_argument("sweep: budgets must be strictly increasing");
  }
  if (!(lambda_inf >= 0.0)) throw std::invalid_argument("sweep: lambda_inf must be >= 0");

  const std::size_t n = m.dim();
  constexpr double inf = std::numeric_limits<double>::infinity();
  SweepResult out;
  out.lambda_inf = lambda_inf;
  out.alpha = norm_equivalence_alpha(norm_a, norm_b, n);
  const Vec t0 = m.evaluate(Vec(n, 0.0));
  out.t0_norm_a = norm_a(t0);
  out.t0_norm_b = norm_b(t0);
  if (lambda_inf > 0.0) {
    out.transition = out.t0_norm_a / lambda_inf;
  } else {
    out.notes.push_back("rho(T_inf) = 0: utility is unbounded in p_bar, no transition point, every budget is low-power");
  }

  NormalizedOptions row_opts = opts;
  std::optional<Vec> warm;
  double warm_budget = 0.0;
  for (double p_bar : grid) {
    SweepRow row;
    row.p_bar = p_bar;
    row.utility_bound = std::min(p_bar / out.t0_norm_a, lambda_inf > 0.0 ? 1.0 / lambda_inf : inf);
    row.ee_bound = std::min(1.0 / out.t0_norm_b, lambda_inf > 0.0 ? out.alpha / (lambda_inf * p_bar) : inf);
    row.regime = (!out.transition || p_bar <= *out.transition) ? Regime::low_power : Regime::high_power;

    if (warm) row_opts.start = scaled(*warm, p_bar / warm_budget);
    try {
      CanonicalSolution sol = solve_canonical(m, norm_a, p_bar, row_opts);
      row.report = sol.report;
      row.utility = sol.c_star;
      row.power = sol.p_star.values();
      row.ee = sol.c_star / norm_b(row.power);
      row.ok = sol.report.converged;
      if (row.ok) {
        warm = row.power;
        warm_budget = p_bar;
      }
    } catch (const std::exception& e) {
      row.ok = false;
      out.notes.push_back("p_bar = " + std::to_string(p_bar) + ": " + e.what());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

SweepResult sweep(const InterferenceMapping& m, const AsymptoticMapping& a, const MonotoneNorm& norm_a,
                  const MonotoneNorm& norm_b, std::span<const double> grid, const NormalizedOptions& opts) {
  const SpectralResult radius = a.is_linear() ? spectral_radius(a, SpectralMethod::linear_power)
                                            : spectral_radius(a, SpectralMethod::budget_ladder, &m);
  SweepResult out = sweep(m, radius.rho, norm_a, norm_b, grid, opts);
  if (radius.flagged) out.notes.push_back("spectral radius bracket did not close; lambda_inf is an upper bound");
  return out;
}

namespace {

double ls_slope(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::optional<TailFit> fit_tail(const std::vector<const SweepRow*>& rows, double u_expected, double e_expected) {
  if (rows.size() < 2) return std::nullopt;
  Vec lp, lu, le;
  for (const SweepRow* r : rows) {
    lp.push_back(std::log(r->p_bar));
    lu.push_back(std::log(r->utility));
    le.push_back(std::log(r->ee));
  }
  TailFit fit;
  fit.points = rows.size();
  fit.utility_slope = ls_slope(lp, lu);
  fit.ee_slope = ls_slope(lp, le);
  fit.utility_deviation = std::abs(fit.utility_slope - u_expected);
  fit.ee_deviation = std::abs(fit.ee_slope - e_expected);
  return fit;
}

}  // namespace

ScalingDiagnostics scaling_diagnostics(const SweepResult& sw) {
  ScalingDiagnostics d;
  const SweepRow* last = nullptr;
  for (const SweepRow& r : sw.rows) {
    if (r.ok) last = &r;
  }
  if (last && sw.lambda_inf > 0.0) {
    d.ladder_gap = std::abs(1.0 / last->utility - sw.lambda_inf) / sw.lambda_inf;
  }
  if (!sw.transition) {
    d.note = "no transition point (lambda_inf = 0); tails undefined";
    return d;
  }
  const double pt = *sw.transition;
  std::vector<const SweepRow*> low, high;
  for (const SweepRow& r : sw.rows) {
    if (!r.ok) continue;
    if (r.p_bar <= pt / 100.0) low.push_back(&r);
    if (r.p_bar >= pt * 100.0) high.push_back(&r);
  }
  d.low = fit_tail(low, 1.0, 0.0);
  d.high = fit_tail(high, 0.0, -1.0);
  d.sufficient_span = d.low.has_value() && d.high.has_value();
  if (!d.sufficient_span) {
    d.note = "insufficient span: need at least two rows two decades below and above p_T";
  }
  return d;
}

BottleneckResult bottleneck_ranking(const LoadScenario& s, const FeasibilityOptions& opts) {
  auto scenario = std::make_shared<const LoadScenario>(s);
  const LoadMapping mapping(scenario, scenario->rate_caps.has_value());
  const AsymptoticMapping a = exact_asymptotic_load(*scenario);

  BottleneckResult out;
  out.verdict = feasibility_check(mapping, a, true, opts);
  if (!out.verdict.fixed_point || !out.verdict.fixed_point->report.converged) return out;

  const NonnegVector& load = out.verdict.fixed_point->x;
  std::vector<RankedStation> ranking;
  for (std::size_t i = 0; i < load.size(); ++i) ranking.push_back({i, load[i], load[i] > 1.0});
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedStation& a1, const RankedStation& b1) { return a1.load > b1.load; });
  out.ranking = std::move(ranking);
  return out;
}

}  // namespace sif
