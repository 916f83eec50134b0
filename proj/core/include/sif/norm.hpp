#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sif/vector.hpp"

namespace sif {

enum class NormKind { max, sum, euclidean, weighted_max, weighted_sum };

/// Parses the file-format name ("max", "sum", "euclidean", "weighted-max", "weighted-sum").
NormKind parse_norm_kind(std::string_view name);
std::string_view to_string(NormKind kind) noexcept;

/// A norm that is monotone on the nonnegative orthant: 0 <= x <= y implies ||x|| <= ||y||.
///
/// Weighted kinds carry strictly positive weights, one per coordinate. Unweighted kinds work
/// in any dimension.
class MonotoneNorm {
 public:
  MonotoneNorm() = default;
  explicit MonotoneNorm(NormKind kind);
  MonotoneNorm(NormKind kind, PositiveVector weights);

  static MonotoneNorm max() { return MonotoneNorm(NormKind::max); }
  static MonotoneNorm sum() { return MonotoneNorm(NormKind::sum); }
  static MonotoneNorm euclidean() { return MonotoneNorm(NormKind::euclidean); }

  NormKind kind() const noexcept { return kind_; }
  const std::optional<PositiveVector>& weights() const noexcept { return weights_; }
  bool is_weighted() const noexcept { return weights_.has_value(); }

  /// Evaluates on raw storage. Entries are taken in absolute value so the result is a norm
  /// on all of R^N; on the orthant this is the plain formula.
  double operator()(std::span<const double> x) const;
  double operator()(const NonnegVector& x) const { return (*this)(x.span()); }

  /// Throws DimensionError unless this norm can be evaluated in dimension n.
  void check_dim(std::size_t n) const;

  bool operator==(const MonotoneNorm&) const = default;

 private:
  NormKind kind_ = NormKind::max;
  std::optional<PositiveVector> weights_;
};

double norm_eval(const MonotoneNorm& norm, const NonnegVector& x);

/// Smallest alpha with ||x||_a <= alpha * ||x||_b for every x in R^dim.
///
/// Every pair of supported kinds has a closed form; plain max and sum are treated as the
/// weighted kinds with unit weights.
double norm_equivalence_alpha(const MonotoneNorm& a, const MonotoneNorm& b, std::size_t dim);

}  // namespace sif
