#pragma once

// Independent reference computations (dense linear algebra via Eigen) and seeded generators for
// randomized instances. Nothing here calls into the solvers under test.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sif/load_scenario.hpp"
#include "sif/matrix.hpp"
#include "sif/vector.hpp"

namespace sif::testing {

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline double spectral_radius_oracle(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m), false);
  double r = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) r = std::max(r, std::abs(es.eigenvalues()[k]));
  return r;
}

/// (I - X)^-1 u
inline Vec affine_fixed_point_oracle(const Matrix& x, const Vec& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - to_eigen(x);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(u.data(), n);
  const Eigen::VectorXd s = a.fullPivLu().solve(b);
  return Vec(s.data(), s.data() + n);
}

/// diag(p)^-1 M diag(p) written out entry by entry:
/// A[i][k] = (p_k / p_i) * sum_{j in N_i} ln2 d_j g[k][j] / (K B g[i][j]) for k != i.
inline Matrix load_asymptotic_oracle(const LoadScenario& s) {
  const std::size_t m = s.power.size();
  Matrix a(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      double acc = 0.0;
      for (std::size_t j : s.assignment[i]) {
        acc += std::log(2.0) * s.demands[j] * s.gains[k][j] / (s.resource_blocks * s.rb_bandwidth * s.gains[i][j]);
      }
      a(i, k) = acc * s.power[k] / s.power[i];
    }
  }
  return a;
}

struct AffineInstance {
  Matrix x;
  Vec u;
  double rho = 0.0;
};

/// Dense X >= 0 rescaled so that its spectral radius (Eigen oracle) equals `rho`.
inline AffineInstance random_affine(std::mt19937_64& rng, std::size_t n, double rho, double u_lo = 0.1,
                                    double u_hi = 2.0) {
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  std::uniform_real_distribution<double> off(u_lo, u_hi);
  Matrix x(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = entry(rng);
  const double r0 = spectral_radius_oracle(x);
  x = scaled(x, rho / r0);
  Vec u(n);
  for (double& v : u) v = off(rng);
  return {x, u, rho};
}

struct LoadInstance {
  LoadScenario scenario;
  double rho = 0.0;
};

/// 2..4 base stations with 1..3 users each, own gains in [0.5, 1], cross gains in [0.05, 0.5].
/// Demands are rescaled so that rho of the exact asymptotic matrix (oracle) equals `rho`.
inline LoadInstance random_load(std::mt19937_64& rng, double rho) {
  std::uniform_int_distribution<std::size_t> stations(2, 4);
  std::uniform_int_distribution<std::size_t> users(1, 3);
  std::uniform_real_distribution<double> own(0.5, 1.0);
  std::uniform_real_distribution<double> cross(0.05, 0.5);
  std::uniform_real_distribution<double> power(0.5, 2.0);
  std::uniform_real_distribution<double> demand(0.5e6, 2e6);

  LoadScenario s;
  const std::size_t m = stations(rng);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> set;
    const std::size_t count = users(rng);
    for (std::size_t c = 0; c < count; ++c) set.push_back(next++);
    s.assignment.push_back(std::move(set));
  }
  s.gains.assign(m, Vec(next, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j : s.assignment[i])
      for (std::size_t k = 0; k < m; ++k) s.gains[k][j] = k == i ? own(rng) : cross(rng);
  s.demands.resize(next);
  for (double& d : s.demands) d = demand(rng);
  s.resource_blocks = 100;
  s.rb_bandwidth = 1.8e5;
  s.noise = 1e-9;
  s.power.resize(m);
  for (double& p : s.power) p = power(rng);

  const double r0 = spectral_radius_oracle(load_asymptotic_oracle(s));
  for (double& d : s.demands) d *= rho / r0;
  return {std::move(s), rho};
}

inline double max_rel_diff(const Vec& got, const Vec& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double scale = std::max(std::abs(want[i]), 1e-300);
    worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
  }
  return worst;
}

}  // namespace sif::testing
