#include "sif/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sif {

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::max_iterations: return "max-iterations";
    case StopReason::divergence_guard: return "divergence-guard";
  }
  return "?";
}

FixedPointResult fixed_point(const InterferenceMapping& m, const NonnegVector& x0, const FixedPointOptions& opts) {
  require_same_dim(m.dim(), x0.size(), "fixed_point start");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("fixed_point: tol must be > 0");

  SolveReport report;
  Vec x = x0.values();
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    Vec tx = m.evaluate(x);
    const double size = max_abs(x);
    report.iterations = it;
    report.residual = max_abs_diff(x, tx) / std::max(1.0, size);
    if (report.residual <= opts.tol) {
      report.converged = true;
      report.stop = StopReason::tolerance;
      return {NonnegVector(std::move(x)), report};
    }
    const double next_size = max_abs(tx);
    if (!(next_size <= opts.growth_guard)) {  // also catches NaN/inf
      report.stop = StopReason::divergence_guard;
      // The iterate is only reported; clamp non-finite entries so it stays a valid NonnegVector.
      for (double& e : x) e = std::isfinite(e) ? std::max(e, 0.0) : opts.growth_guard;
      return {NonnegVector(std::move(x)), report};
    }
    x = std::move(tx);
  }
  report.stop = StopReason::max_iterations;
  return {NonnegVector(std::move(x)), report};
}

FixedPointResult fixed_point(const InterferenceMapping& m, const FixedPointOptions& opts) {
  return fixed_point(m, NonnegVector::zeros(m.dim()), opts);
}

namespace {

enum class ResidualKind { canonical, eigen };

struct NormalizedRun {
  Vec x;
  double image_norm = 0.0;  ///< ||T(x)||_a at the returned x
  SolveReport report;
  bool zero_direction = false;
};

double residual_of(ResidualKind kind, std::span<const double> x, std::span<const double> tx, double image_norm,
                   double radius) {
  double r = 0.0;
  if (kind == ResidualKind::canonical) {
    const double c = radius / image_norm;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x[i] - c * tx[i]));
    return r / max_abs(x);
  }
  const double lambda = image_norm / radius;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(tx[i] - lambda * x[i]));
  return r / std::max(1.0, lambda);
}

Vec onto_sphere(Vec v, const MonotoneNorm& norm, double radius) {
  const double n = norm(v);
  for (double& e : v) e *= radius / n;
  return v;
}

// Iterates x <- radius * S(x) / ||S(x)||_a with S = T. If the residual stalls (periodic
// coupling makes the plain iteration oscillate), S becomes T(x) + s x with s the current
// eigenvalue estimate; the shifted map is still standard/homogeneous and has the same
// normalized fixed points, and the shift damps the oscillating modes.
NormalizedRun normalized_iteration(const Mapping& m, const MonotoneNorm& norm, double radius, Vec start,
                                   ResidualKind kind, const NormalizedOptions& opts) {
  constexpr std::size_t kStallWindow = 16;
  constexpr std::size_t kStallWarmup = 64;
  constexpr double kStallRatio = 0.85;

  if (!(opts.tol > 0.0)) throw std::invalid_argument("normalized iteration: tol must be > 0");
  if (opts.max_iter == 0) throw std::invalid_argument("normalized iteration: max_iter must be >= 1");
  require_same_dim(m.dim(), start.size(), "normalized iteration start");
  norm.check_dim(m.dim());
  for (double e : start) {
    if (!std::isfinite(e) || e < 0.0) throw std::invalid_argument("normalized iteration: start must be >= 0");
  }
  if (norm(start) == 0.0) throw std::invalid_argument("normalized iteration: start must be nonzero");

  NormalizedRun run;
  const Vec origin = onto_sphere(start, norm, radius);
  Vec x = origin;
  bool restarted = false;
  double shift = 0.0;
  std::vector<double> history;

  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    Vec tx = m.evaluate(x);
    const double image_norm = norm(tx);
    run.report.iterations = it;

    if (!(image_norm > 0.0)) {
      if (!std::isfinite(image_norm)) throw std::domain_error("normalized iteration: mapping returned non-finite values");
      if (kind == ResidualKind::canonical) {
        throw std::domain_error("normalized iteration: interference mapping returned the zero vector");
      }
      if (!restarted) {
        restarted = true;
        Vec perturbed = origin;
        for (double& e : perturbed) e += 1e-9;
        x = onto_sphere(std::move(perturbed), norm, radius);
        continue;
      }
      run.x = std::move(x);
      run.image_norm = 0.0;
      run.zero_direction = true;
      run.report.residual = 0.0;
      run.report.converged = true;
      run.report.stop = StopReason::tolerance;
      return run;
    }

    const double residual = residual_of(kind, x, tx, image_norm, radius);
    run.report.residual = residual;
    if (residual <= opts.tol) {
      run.x = std::move(x);
      run.image_norm = image_norm;
      run.report.converged = true;
      run.report.stop = StopReason::tolerance;
      return run;
    }

    history.push_back(residual);
    if (!run.report.shifted && it >= kStallWarmup &&
        residual > kStallRatio * history[history.size() - 1 - kStallWindow]) {
      run.report.shifted = true;
      shift = image_norm / radius;
    }
    if (shift > 0.0) {
      for (std::size_t i = 0; i < tx.size(); ++i) tx[i] += shift * x[i];
    }
    x = onto_sphere(std::move(tx), norm, radius);
  }

  Vec tx = m.evaluate(x);
  run.image_norm = norm(tx);
  run.x = std::move(x);
  run.report.stop = StopReason::max_iterations;
  return run;
}

}  // namespace

CanonicalSolution solve_canonical(const InterferenceMapping& m, const MonotoneNorm& norm_a, double p_bar,
                                  const NormalizedOptions& opts) {
  if (!(p_bar > 0.0) || !std::isfinite(p_bar)) {
    throw std::invalid_argument("solve_canonical: power budget must be finite and > 0");
  }
  Vec start = opts.start.value_or(Vec(m.dim(), 1.0));
  NormalizedRun run = normalized_iteration(m, norm_a, p_bar, std::move(start), ResidualKind::canonical, opts);
  return {PositiveVector(std::move(run.x)), p_bar / run.image_norm, run.report};
}

EigenResult conditional_eigen(const Mapping& m, const MonotoneNorm& norm_a, const NormalizedOptions& opts) {
  Vec start = opts.start.value_or(Vec(m.dim(), 1.0));
  NormalizedRun run = normalized_iteration(m, norm_a, 1.0, std::move(start), ResidualKind::eigen, opts);
  EigenResult result;
  result.pair = {NonnegVector(std::move(run.x)), run.image_norm};
  result.report = run.report;
  result.zero_direction = run.zero_direction;
  return result;
}

}  // namespace sif
