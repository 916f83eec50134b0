#include "sif/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sif {

std::string_view to_string(SpectralMethod method) noexcept {
  switch (method) {
    case SpectralMethod::linear_power: return "linear-power";
    case SpectralMethod::budget_ladder: return "budget-ladder";
  }
  return "?";
}

namespace {

// Strongly connected components of the graph i -> j whenever a(i, j) > 0 (Tarjan).
std::vector<std::vector<std::size_t>> strong_components(const Matrix& a) {
  const std::size_t n = a.rows();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnseen), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  const auto visit = [&](auto&& self, std::size_t v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!(a(v, w) > 0.0)) continue;
      if (index[w] == kUnseen) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == kUnseen) visit(visit, v);
  }
  return comps;
}

// Bracketing on an irreducible block. A stalled bracket (periodic block) switches to A + sI,
// which is primitive and has the same Perron vector.
SpectralResult irreducible_bracket(const Matrix& a, double tol, std::size_t max_iter) {
  SpectralResult res;
  constexpr std::size_t kStallWarmup = 32;
  constexpr std::size_t kStallWindow = 16;
  const std::size_t n = a.rows();
  Vec x(n, 1.0 / static_cast<double>(n));
  double shift = 0.0;
  bool shifted = false;
  std::vector<double> widths;

  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vec y = a.apply(x);
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] > 0.0) {
        const double r = y[i] / x[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      } else {
        positive = false;
      }
    }
    res.lower = std::max(res.lower, lo - shift);
    if (positive) res.upper = std::min(res.upper, std::max(hi - shift, 0.0));

    res.iterations = it;
    const double width = res.upper - res.lower;
    const double mid = 0.5 * (res.upper + res.lower);
    if (std::isfinite(width) && width <= tol * std::max(1.0, mid)) {
      res.rho = mid;
      res.converged = true;
      return res;
    }

    const double mass = std::accumulate(y.begin(), y.end(), 0.0);
    widths.push_back(width);
    const bool stalled = it >= kStallWarmup && !(width < 0.5 * widths[widths.size() - 1 - kStallWindow]);
    if (!shifted && (mass == 0.0 || stalled)) {
      shifted = true;
      shift = std::isfinite(res.upper) ? std::max(res.upper, res.lower) : std::max(res.lower, 1.0);
      if (shift == 0.0) shift = 1.0;
      std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(n));
      continue;
    }
    if (mass == 0.0) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / mass;
  }

  res.flagged = true;
  res.rho = std::isfinite(res.upper) ? res.upper : res.lower;
  return res;
}

}  // namespace

SpectralResult collatz_wielandt(const Matrix& a, double tol, std::size_t max_iter) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw std::invalid_argument("collatz_wielandt: square matrix required");
  if (!a.is_nonnegative()) throw std::invalid_argument("collatz_wielandt: matrix must be nonnegative");

  SpectralResult res;
  res.method = SpectralMethod::linear_power;
  res.upper = 0.0;
  res.converged = true;

  // rho(A) is the largest rho over the irreducible diagonal blocks of its Frobenius form.
  for (const std::vector<std::size_t>& comp : strong_components(a)) {
    const std::size_t m = comp.size();
    if (m == 1 && a(comp[0], comp[0]) == 0.0) continue;
    Matrix block(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) block(i, j) = a(comp[i], comp[j]);
    const SpectralResult r = irreducible_bracket(block, tol, max_iter);
    res.iterations += r.iterations;
    res.lower = std::max(res.lower, r.lower);
    res.upper = std::max(res.upper, std::isfinite(r.upper) ? r.upper : r.rho);
    res.converged = res.converged && r.converged;
    res.flagged = res.flagged || r.flagged;
  }
  res.rho = res.converged ? 0.5 * (res.lower + res.upper) : res.upper;
  return res;
}

SpectralResult budget_ladder_radius(const InterferenceMapping& base, const SpectralOptions& opts) {
  if (opts.budgets.size() < 2) throw std::invalid_argument("budget ladder needs at least two budgets");
  SpectralResult res;
  res.method = SpectralMethod::budget_ladder;

  NormalizedOptions canonical = opts.canonical;
  std::optional<Vec> warm;
  double prev_budget = 0.0;
  for (std::size_t k = 0; k < opts.budgets.size(); ++k) {
    const double budget = opts.budgets[k];
    if (k > 0 && !(budget > prev_budget)) throw std::invalid_argument("budget ladder must be strictly increasing");
    if (warm) canonical.start = scaled(*warm, budget / prev_budget);
    const CanonicalSolution sol = solve_canonical(base, opts.ladder_norm, budget, canonical);
    res.iterations += sol.report.iterations;
    if (!sol.report.converged) {
      res.flagged = true;
      break;
    }
    const double value = 1.0 / sol.c_star;
    res.budgets.push_back(budget);
    res.ladder_values.push_back(value);
    warm = sol.p_star.values();
    prev_budget = budget;

    if (k == 0) continue;
    const double before = res.ladder_values[res.ladder_values.size() - 2];
    if (value > before) res.ladder_monotone = false;
    if (std::abs(value - before) <= opts.ladder_rtol * value) {
      res.converged = true;
      break;
    }
  }
  if (!res.ladder_values.empty()) {
    res.rho = res.ladder_values.back();
    res.upper = *std::min_element(res.ladder_values.begin(), res.ladder_values.end());
  }
  res.lower = 0.0;
  if (!res.converged) res.flagged = true;
  return res;
}

SpectralResult spectral_radius(const AsymptoticMapping& a, SpectralMethod method, const InterferenceMapping* base,
                               const SpectralOptions& opts) {
  if (method == SpectralMethod::linear_power) {
    if (!a.is_linear()) throw std::invalid_argument("linear-power spectral radius needs an exact-linear asymptotic mapping");
    return collatz_wielandt(a.matrix(), opts.tol, opts.max_iter);
  }
  const InterferenceMapping* source = base ? base : a.base().get();
  if (!source) throw std::invalid_argument("budget-ladder spectral radius needs the base interference mapping");
  require_same_dim(a.dim(), source->dim(), "budget-ladder base mapping");
  return budget_ladder_radius(*source, opts);
}

}  // namespace sif
