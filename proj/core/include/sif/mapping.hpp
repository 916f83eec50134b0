#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>

#include "sif/load_scenario.hpp"
#include "sif/matrix.hpp"
#include "sif/vector.hpp"

namespace sif {

/// Anything evaluable as R^N_+ -> R^N_+. Both interference mappings T and their asymptotic
/// mappings T_inf implement this, so the eigen solvers accept either.
class Mapping {
 public:
  virtual ~Mapping() = default;

  virtual std::size_t dim() const noexcept = 0;
  /// Unchecked evaluation on raw storage; callers guarantee x.size() == dim() and x >= 0.
  virtual Vec evaluate(std::span<const double> x) const = 0;
};

enum class MappingFamily { affine, load, load_capped, custom };

std::string_view to_string(MappingFamily family) noexcept;

/// A standard interference mapping T: R^N_+ -> R^N_++ (scalable, monotone, positive).
///
/// Built-in families satisfy the axioms by construction. Custom mappings are taken on trust;
/// check_standard_properties() samples them.
class InterferenceMapping : public Mapping {
 public:
  virtual MappingFamily family() const noexcept = 0;

  /// Checked evaluation. Throws DimensionError on size mismatch and std::domain_error if the
  /// output is not strictly positive.
  PositiveVector operator()(const NonnegVector& x) const;
};

/// T(x) = Xx + u with X >= 0 and u > 0.
class AffineMapping final : public InterferenceMapping {
 public:
  AffineMapping(Matrix coupling, PositiveVector offset);

  std::size_t dim() const noexcept override { return offset_.size(); }
  Vec evaluate(std::span<const double> x) const override;
  MappingFamily family() const noexcept override { return MappingFamily::affine; }

  const Matrix& coupling() const noexcept { return coupling_; }
  const PositiveVector& offset() const noexcept { return offset_; }

 private:
  Matrix coupling_;
  PositiveVector offset_;
};

PositiveVector affine_eval(const AffineMapping& m, const NonnegVector& x);

/// The load-coupling mapping of a LoadScenario, optionally with per-RB rate caps.
class LoadMapping final : public InterferenceMapping {
 public:
  /// Validates the scenario. `capped` requires rate caps to be present.
  LoadMapping(std::shared_ptr<const LoadScenario> scenario, bool capped);

  static LoadMapping uncapped(LoadScenario s) {
    return LoadMapping(std::make_shared<const LoadScenario>(std::move(s)), false);
  }
  static LoadMapping capped(LoadScenario s) {
    return LoadMapping(std::make_shared<const LoadScenario>(std::move(s)), true);
  }

  std::size_t dim() const noexcept override { return scenario_->num_base_stations(); }
  Vec evaluate(std::span<const double> x) const override;
  MappingFamily family() const noexcept override {
    return capped_ ? MappingFamily::load_capped : MappingFamily::load;
  }

  const LoadScenario& scenario() const noexcept { return *scenario_; }
  std::shared_ptr<const LoadScenario> scenario_ptr() const noexcept { return scenario_; }

 private:
  std::shared_ptr<const LoadScenario> scenario_;
  bool capped_;
};

/// User-supplied mapping. No axioms are enforced at construction.
class CustomMapping final : public InterferenceMapping {
 public:
  using Function = std::function<Vec(std::span<const double>)>;

  CustomMapping(std::size_t dim, Function f);

  std::size_t dim() const noexcept override { return dim_; }
  Vec evaluate(std::span<const double> x) const override;
  MappingFamily family() const noexcept override { return MappingFamily::custom; }

 private:
  std::size_t dim_;
  Function f_;
};

}  // namespace sif
