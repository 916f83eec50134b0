#include "sif/properties.hpp"

#include <cmath>
#include <random>

namespace sif {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Vec log_uniform(std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    Vec x(n);
    for (double& e : x) e = std::exp(d(rng_));
    return x;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check_positive(const Vec& x, const Vec& tx, PropertyReport& report) {
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (!positive_finite(tx[i])) {
      report.violations.push_back({"positivity", i, x, {}, 0.0, tx[i], 0.0});
    }
  }
}

}  // namespace

PropertyReport check_standard_properties(const InterferenceMapping& m, std::size_t samples,
                                         std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("check_standard_properties: samples must be >= 1");
  PropertyReport report{"standard interference mapping", samples, seed, {}};
  const std::size_t n = m.dim();
  Sampler sampler(seed);

  const Vec zero(n, 0.0);
  check_positive(zero, m.evaluate(zero), report);

  for (std::size_t s = 0; s < samples; ++s) {
    const Vec x = sampler.log_uniform(n, 1e-6, 1e3);
    // (1, 10]: reflect the half-open [1, 10) draw.
    const double alpha = 11.0 - sampler.uniform(1.0, 10.0);

    const Vec tx = m.evaluate(x);
    check_positive(x, tx, report);

    const Vec tax = m.evaluate(scaled(x, alpha));
    for (std::size_t i = 0; i < n; ++i) {
      const double lhs = alpha * tx[i];
      if (!(lhs > tax[i])) report.violations.push_back({"scalability", i, x, {}, alpha, lhs, tax[i]});
    }

    Vec lower = x;
    for (double& e : lower) e *= sampler.uniform(0.0, 1.0);
    const Vec tlower = m.evaluate(lower);
    for (std::size_t i = 0; i < n; ++i) {
      if (tx[i] < tlower[i]) report.violations.push_back({"monotonicity", i, x, lower, 0.0, tx[i], tlower[i]});
    }
  }
  return report;
}

}  // namespace sif
