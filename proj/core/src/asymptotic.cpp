#include "sif/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace sif {

void LadderConfig::validate() const {
  if (scales.size() < 2) throw std::invalid_argument("ladder needs at least two scales");
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (!(scales[k] > 0.0) || !std::isfinite(scales[k])) {
      throw std::invalid_argument("ladder scales must be finite and > 0");
    }
    if (k > 0 && !(scales[k] > scales[k - 1])) {
      throw std::invalid_argument("ladder scales must be strictly increasing");
    }
  }
  if (!(rtol > 0.0)) throw std::invalid_argument("ladder rtol must be > 0");
  if (!(atol >= 0.0)) throw std::invalid_argument("ladder atol must be >= 0");
}

namespace {

Vec rung_value(const InterferenceMapping& m, std::span<const double> x, double h) {
  Vec y = m.evaluate(scaled(x, h));
  for (double& e : y) e /= h;
  return y;
}

void snap_and_clamp(Vec& v) {
  const double top = max_abs(v);
  for (double& e : v) {
    if (e < 1e-12 * top || e < 0.0) e = 0.0;
  }
}

}  // namespace

AsymptoticEstimate estimate_asymptotic(const InterferenceMapping& m, const NonnegVector& x,
                                       const LadderConfig& cfg) {
  cfg.validate();
  require_same_dim(m.dim(), x.size(), "estimate_asymptotic");
  AsymptoticEstimate est;

  // T(0)/h -> 0 exactly.
  if (all_zero(x.span())) {
    est.value = NonnegVector::zeros(x.size());
    est.converged = true;
    est.scale = cfg.scales.front();
    return est;
  }

  const double floor = cfg.atol * max_abs(x.span());
  Vec prev = rung_value(m, x.span(), cfg.scales[0]);
  Vec curr;
  for (std::size_t k = 1; k < cfg.scales.size(); ++k) {
    curr = rung_value(m, x.span(), cfg.scales[k]);
    const double top = max_abs(curr);
    bool agree = true;
    double deviation = 0.0;
    for (std::size_t i = 0; i < curr.size(); ++i) {
      const double diff = std::abs(curr[i] - prev[i]);
      const double ref = std::max(std::abs(curr[i]), top);
      if (diff > cfg.rtol * ref + floor) agree = false;
      if (ref > 0.0) deviation = std::max(deviation, diff / ref);
      if (curr[i] > prev[i] * (1.0 + 1e-12) + 1e-300) est.nonmonotone = true;
    }
    est.rung = k;
    est.scale = cfg.scales[k];
    est.deviation = deviation;
    if (agree) {
      est.converged = true;
      break;
    }
    prev = std::move(curr);
    curr.clear();
  }
  Vec out = curr.empty() ? prev : curr;
  snap_and_clamp(out);
  est.value = NonnegVector(std::move(out));
  return est;
}

AsymptoticMapping AsymptoticMapping::linear(Matrix matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("asymptotic linear map needs a nonempty square matrix");
  }
  if (!matrix.is_nonnegative()) {
    throw std::invalid_argument("asymptotic linear map must be entrywise nonnegative");
  }
  AsymptoticMapping a;
  a.provenance_ = Provenance::exact_linear;
  a.dim_ = matrix.rows();
  a.matrix_ = std::move(matrix);
  return a;
}

AsymptoticMapping AsymptoticMapping::numeric(std::shared_ptr<const InterferenceMapping> base,
                                             LadderConfig cfg) {
  if (!base) throw std::invalid_argument("numeric asymptotic mapping needs a base mapping");
  cfg.validate();
  AsymptoticMapping a;
  a.provenance_ = Provenance::numeric;
  a.dim_ = base->dim();
  a.base_ = std::move(base);
  a.ladder_ = std::move(cfg);
  return a;
}

const Matrix& AsymptoticMapping::matrix() const {
  if (!is_linear()) throw std::logic_error("numeric asymptotic mapping has no matrix");
  return matrix_;
}

Vec AsymptoticMapping::evaluate(std::span<const double> x) const {
  if (is_linear()) return matrix_.apply(x);
  const AsymptoticEstimate est = estimate_asymptotic(*base_, NonnegVector(Vec(x.begin(), x.end())), ladder_);
  if (!est.converged) {
    throw NonConvergenceError("asymptotic ladder did not settle (last rung h = " + std::to_string(est.scale) +
                              ", deviation " + std::to_string(est.deviation) + ")");
  }
  return est.value.values();
}

NonnegVector AsymptoticMapping::operator()(const NonnegVector& x) const {
  require_same_dim(dim_, x.size(), "asymptotic mapping input");
  Vec y = evaluate(x.span());
  for (double& e : y) e = std::max(e, 0.0);
  return NonnegVector(std::move(y));
}

NonnegVector asymptotic_eval(const AsymptoticMapping& a, const NonnegVector& x) { return a(x); }

AsymptoticMapping exact_asymptotic_affine(const AffineMapping& m) {
  return AsymptoticMapping::linear(m.coupling());
}

Matrix load_coupling_matrix(const LoadScenario& s) {
  s.validate();
  const std::size_t m = s.num_base_stations();
  Matrix out(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      double acc = 0.0;
      for (std::size_t j : s.assignment[i]) {
        acc += std::numbers::ln2 * s.demands[j] * s.gains[k][j] /
               (s.resource_blocks * s.rb_bandwidth * s.gains[i][j]);
      }
      out(i, k) = acc;
    }
  }
  return out;
}

AsymptoticMapping exact_asymptotic_load(const LoadScenario& s) {
  Matrix coupling = load_coupling_matrix(s);
  const std::size_t m = coupling.rows();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) coupling(i, k) *= s.power[k] / s.power[i];
  return AsymptoticMapping::linear(std::move(coupling));
}

PropertyReport check_asymptotic_properties(const AsymptoticMapping& a, std::size_t samples,
                                           std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("check_asymptotic_properties: samples must be >= 1");
  PropertyReport report{"asymptotic mapping", samples, seed, {}};
  const std::size_t n = a.dim();
  const double tol = a.is_linear() ? 1e-9 : 10.0 * a.ladder().rtol;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_coord(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Vec zero(n, 0.0);
  const Vec t0 = a.evaluate(zero);
  for (std::size_t i = 0; i < n; ++i) {
    if (t0[i] != 0.0) report.violations.push_back({"zero-at-origin", i, zero, {}, 0.0, t0[i], 0.0});
  }

  constexpr double kScales[] = {0.5, 2.0, 10.0};
  for (std::size_t s = 0; s < samples; ++s) {
    Vec x(n);
    for (double& e : x) e = std::exp(log_coord(rng));
    const Vec tx = a.evaluate(x);
    const double top = max_abs(tx);

    for (double c : kScales) {
      const Vec tcx = a.evaluate(scaled(x, c));
      for (std::size_t i = 0; i < n; ++i) {
        const double expected = c * tx[i];
        if (std::abs(tcx[i] - expected) > tol * c * top) {
          report.violations.push_back({"homogeneity", i, x, {}, c, tcx[i], expected});
        }
      }
    }

    Vec lower = x;
    for (double& e : lower) e *= unit(rng);
    const Vec tlower = a.evaluate(lower);
    for (std::size_t i = 0; i < n; ++i) {
      if (tx[i] < tlower[i] - tol * top) {
        report.violations.push_back({"monotonicity", i, x, lower, 0.0, tx[i], tlower[i]});
      }
    }
  }
  return report;
}

}  // namespace sif
