#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sif {

/// Raw working storage for iterates. Validated types below wrap it at API boundaries.
using Vec = std::vector<double>;

/// Thrown when two operands disagree on dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the nonnegative orthant R^N_+ (N >= 1, finite entries).
class NonnegVector {
 public:
  NonnegVector() = default;
  explicit NonnegVector(Vec values);
  NonnegVector(std::initializer_list<double> values) : NonnegVector(Vec(values)) {}

  static NonnegVector zeros(std::size_t n);
  static NonnegVector filled(std::size_t n, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> span() const noexcept { return values_; }
  const Vec& values() const noexcept { return values_; }

  bool operator==(const NonnegVector&) const = default;

 private:
  Vec values_;
};

/// A point of the open positive orthant R^N_++.
class PositiveVector {
 public:
  PositiveVector() = default;
  explicit PositiveVector(Vec values);
  PositiveVector(std::initializer_list<double> values) : PositiveVector(Vec(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> span() const noexcept { return values_; }
  const Vec& values() const noexcept { return values_; }

  operator NonnegVector() const { return NonnegVector(values_); }

  bool operator==(const PositiveVector&) const = default;

 private:
  Vec values_;
};

void require_same_dim(std::size_t expected, std::size_t actual, const std::string& what);

double max_abs(std::span<const double> x) noexcept;
double max_abs_diff(std::span<const double> a, std::span<const double> b);
Vec scaled(std::span<const double> x, double factor);
bool all_zero(std::span<const double> x) noexcept;

}  // namespace sif
