#include "sif/load_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sif {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const std::string& field) {
  if (!positive_finite(v)) {
    throw ScenarioError(field, "must be finite and > 0 (got " + std::to_string(v) + ")");
  }
}

void require_positive_entries(const Vec& v, std::size_t n, const std::string& field) {
  if (v.size() != n) {
    throw ScenarioError(field, "expected " + std::to_string(n) + " entries, got " +
                                   std::to_string(v.size()));
  }
  for (std::size_t k = 0; k < n; ++k) require_positive(v[k], field + "/" + std::to_string(k));
}

}  // namespace

void LoadScenario::validate() const {
  const std::size_t m = num_base_stations();
  const std::size_t n = num_users();
  if (m == 0) throw ScenarioError("/load/powers", "at least one base station is required");
  if (n == 0) throw ScenarioError("/load/demands", "at least one user is required");

  require_positive_entries(power, m, "/load/powers");
  require_positive_entries(demands, n, "/load/demands");
  require_positive(resource_blocks, "/load/K");
  require_positive(rb_bandwidth, "/load/B");
  require_positive(noise, "/load/sigma2");
  if (rate_caps) require_positive_entries(*rate_caps, m, "/load/caps");

  if (gains.size() != m) {
    throw ScenarioError("/load/gains", "expected " + std::to_string(m) + " rows (one per base station), got " +
                                           std::to_string(gains.size()));
  }
  for (std::size_t i = 0; i < m; ++i) {
    require_positive_entries(gains[i], n, "/load/gains/" + std::to_string(i));
  }

  if (assignment.size() != m) {
    throw ScenarioError("/load/assignment", "expected " + std::to_string(m) + " user lists, got " +
                                                std::to_string(assignment.size()));
  }
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string field = "/load/assignment/" + std::to_string(i);
    if (assignment[i].empty()) {
      throw ScenarioError(field, "base station " + std::to_string(i) + " has no assigned users");
    }
    for (std::size_t j : assignment[i]) {
      if (j >= n) {
        throw ScenarioError(field, "user index " + std::to_string(j) + " out of range (N = " +
                                       std::to_string(n) + ")");
      }
      if (owner[j] >= 0) {
        throw ScenarioError(field, "user " + std::to_string(j) + " already assigned to base station " +
                                       std::to_string(owner[j]));
      }
      owner[j] = static_cast<int>(i);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (owner[j] < 0) {
      throw ScenarioError("/load/assignment", "user " + std::to_string(j) + " is not assigned to any base station");
    }
  }
}

double rate_per_rb(const LoadScenario& s, std::span<const double> x, std::size_t i, std::size_t j) {
  const std::size_t m = s.num_base_stations();
  require_same_dim(m, x.size(), "rate_per_rb load vector");
  double interference = s.noise;
  for (std::size_t k = 0; k < m; ++k) {
    if (k != i) interference += x[k] * s.power[k] * s.gains[k][j];
  }
  const double sinr = s.power[i] * s.gains[i][j] / interference;
  // log1p keeps the high-load regime (sinr -> 0) accurate; the asymptotic estimator lives there.
  return s.rb_bandwidth * std::log1p(sinr) / std::numbers::ln2;
}

Vec load_eval(const LoadScenario& s, std::span<const double> x) {
  const std::size_t m = s.num_base_stations();
  require_same_dim(m, x.size(), "load_eval");
  Vec out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j : s.assignment[i]) {
      out[i] += s.demands[j] / (s.resource_blocks * rate_per_rb(s, x, i, j));
    }
  }
  return out;
}

Vec capped_load_eval(const LoadScenario& s, std::span<const double> x) {
  if (!s.rate_caps) throw std::invalid_argument("capped_load_eval: scenario has no rate caps");
  const std::size_t m = s.num_base_stations();
  require_same_dim(m, x.size(), "capped_load_eval");
  Vec out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double cap = (*s.rate_caps)[i];
    for (std::size_t j : s.assignment[i]) {
      const double uncapped = s.demands[j] / (s.resource_blocks * rate_per_rb(s, x, i, j));
      const double at_cap = s.demands[j] / (s.resource_blocks * cap);
      out[i] += std::max(uncapped, at_cap);
    }
  }
  return out;
}

}  // namespace sif
