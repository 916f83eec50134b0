#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>

#include "sif/load_scenario.hpp"
#include "sif/mapping.hpp"
#include "sif/matrix.hpp"
#include "sif/properties.hpp"
#include "sif/vector.hpp"

namespace sif {

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discretization of the limit h -> inf in T_inf(x) = lim T(hx)/h.
///
/// Consecutive rungs h_k, h_{k+1} agree at coordinate i when
///   |v_{k+1,i} - v_{k,i}| <= rtol * max(|v_{k+1,i}|, ||v_{k+1}||_inf) + atol * ||x||_inf.
/// The atol floor lets coordinates whose limit is zero settle.
struct LadderConfig {
  Vec scales{1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
  double rtol = 1e-6;
  double atol = 1e-9;

  void validate() const;
};

struct AsymptoticEstimate {
  NonnegVector value;
  bool converged = false;
  std::size_t rung = 0;     ///< index into LadderConfig::scales of the returned value
  double scale = 0.0;       ///< h at that rung
  double deviation = 0.0;   ///< max relative change between the last two rungs
  bool nonmonotone = false; ///< some coordinate of T(hx)/h increased with h (scalability says it cannot)
};

/// Ladder estimate of T_inf(x). Coordinates below 1e-12 of the largest are snapped to 0.
AsymptoticEstimate estimate_asymptotic(const InterferenceMapping& m, const NonnegVector& x,
                                       const LadderConfig& cfg = {});

/// The asymptotic mapping T_inf of a standard interference mapping: either an exact linear map
/// (affine and load-coupled families) or the ladder estimator around a base mapping.
class AsymptoticMapping final : public Mapping {
 public:
  enum class Provenance { exact_linear, numeric };

  static AsymptoticMapping linear(Matrix matrix);
  static AsymptoticMapping numeric(std::shared_ptr<const InterferenceMapping> base, LadderConfig cfg = {});

  std::size_t dim() const noexcept override { return dim_; }
  /// Throws NonConvergenceError if the numeric ladder does not settle.
  Vec evaluate(std::span<const double> x) const override;
  NonnegVector operator()(const NonnegVector& x) const;

  Provenance provenance() const noexcept { return provenance_; }
  bool is_linear() const noexcept { return provenance_ == Provenance::exact_linear; }
  /// Throws std::logic_error for numeric provenance.
  const Matrix& matrix() const;
  const std::shared_ptr<const InterferenceMapping>& base() const noexcept { return base_; }
  const LadderConfig& ladder() const noexcept { return ladder_; }

 private:
  AsymptoticMapping() = default;

  Provenance provenance_ = Provenance::exact_linear;
  std::size_t dim_ = 0;
  Matrix matrix_;
  std::shared_ptr<const InterferenceMapping> base_;
  LadderConfig ladder_;
};

NonnegVector asymptotic_eval(const AsymptoticMapping& a, const NonnegVector& x);

/// x -> Xx: the additive offset vanishes in the limit.
AsymptoticMapping exact_asymptotic_affine(const AffineMapping& m);

/// The coupling matrix M of a load scenario: zero diagonal and
/// M[i][k] = sum_{j in N_i} ln(2) d_j g[k][j] / (K B g[i][j]).
Matrix load_coupling_matrix(const LoadScenario& s);

/// x -> diag(p)^-1 M diag(p) x. Identical with or without rate caps.
AsymptoticMapping exact_asymptotic_load(const LoadScenario& s);

/// Homogeneity (c in {0.5, 2, 10}), monotonicity and T_inf(0) = 0 on sampled points.
/// Tolerance is 1e-9 relative for exact-linear mappings and 10 * rtol for numeric ones.
PropertyReport check_asymptotic_properties(const AsymptoticMapping& a,
                                           std::size_t samples = kDefaultPropertySamples,
                                           std::uint64_t seed = kDefaultPropertySeed);

}  // namespace sif
