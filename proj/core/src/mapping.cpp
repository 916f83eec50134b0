#include "sif/mapping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sif {

std::string_view to_string(MappingFamily family) noexcept {
  switch (family) {
    case MappingFamily::affine: return "affine";
    case MappingFamily::load: return "load";
    case MappingFamily::load_capped: return "load-capped";
    case MappingFamily::custom: return "custom";
  }
  return "?";
}

PositiveVector InterferenceMapping::operator()(const NonnegVector& x) const {
  require_same_dim(dim(), x.size(), "interference mapping input");
  Vec y = evaluate(x.span());
  require_same_dim(dim(), y.size(), "interference mapping output");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !std::isfinite(y[i])) {
      throw std::domain_error("interference mapping output coordinate " + std::to_string(i) +
                              " is not finite and > 0");
    }
  }
  return PositiveVector(std::move(y));
}

AffineMapping::AffineMapping(Matrix coupling, PositiveVector offset)
    : coupling_(std::move(coupling)), offset_(std::move(offset)) {
  require_same_dim(offset_.size(), coupling_.rows(), "affine coupling rows");
  require_same_dim(offset_.size(), coupling_.cols(), "affine coupling columns");
  if (!coupling_.is_nonnegative()) {
    throw std::invalid_argument("affine coupling matrix must be entrywise finite and >= 0");
  }
}

Vec AffineMapping::evaluate(std::span<const double> x) const {
  Vec y = coupling_.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset_[i];
  return y;
}

PositiveVector affine_eval(const AffineMapping& m, const NonnegVector& x) { return m(x); }

LoadMapping::LoadMapping(std::shared_ptr<const LoadScenario> scenario, bool capped)
    : scenario_(std::move(scenario)), capped_(capped) {
  if (!scenario_) throw std::invalid_argument("LoadMapping: null scenario");
  scenario_->validate();
  if (capped_ && !scenario_->rate_caps) {
    throw ScenarioError("/load/caps", "capped load mapping requires a rate cap per base station");
  }
}

Vec LoadMapping::evaluate(std::span<const double> x) const {
  return capped_ ? capped_load_eval(*scenario_, x) : load_eval(*scenario_, x);
}

CustomMapping::CustomMapping(std::size_t dim, Function f) : dim_(dim), f_(std::move(f)) {
  if (dim_ == 0) throw std::invalid_argument("CustomMapping: dimension must be at least 1");
  if (!f_) throw std::invalid_argument("CustomMapping: empty function");
}

Vec CustomMapping::evaluate(std::span<const double> x) const { return f_(x); }

}  // namespace sif
