#include "sif/vector.hpp"

#include <algorithm>
#include <cmath>

namespace sif {

namespace {

void check_entries(const Vec& v, bool strict, const char* type) {
  if (v.empty()) {
    throw std::invalid_argument(std::string(type) + ": dimension must be at least 1");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double e = v[i];
    if (!std::isfinite(e) || e < 0.0 || (strict && e == 0.0)) {
      throw std::invalid_argument(std::string(type) + ": entry " + std::to_string(i) + " = " +
                                  std::to_string(e) +
                                  (strict ? " is not finite and > 0" : " is not finite and >= 0"));
    }
  }
}

}  // namespace

NonnegVector::NonnegVector(Vec values) : values_(std::move(values)) {
  check_entries(values_, false, "NonnegVector");
}

NonnegVector NonnegVector::zeros(std::size_t n) { return NonnegVector(Vec(n, 0.0)); }

NonnegVector NonnegVector::filled(std::size_t n, double value) {
  return NonnegVector(Vec(n, value));
}

PositiveVector::PositiveVector(Vec values) : values_(std::move(values)) {
  check_entries(values_, true, "PositiveVector");
}

void require_same_dim(std::size_t expected, std::size_t actual, const std::string& what) {
  if (expected != actual) {
    throw DimensionError(what + ": expected dimension " + std::to_string(expected) + ", got " +
                         std::to_string(actual));
  }
}

double max_abs(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double e : x) m = std::max(m, std::abs(e));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec scaled(std::span<const double> x, double factor) {
  Vec out(x.begin(), x.end());
  for (double& e : out) e *= factor;
  return out;
}

bool all_zero(std::span<const double> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](double e) { return e == 0.0; });
}

}  // namespace sif
