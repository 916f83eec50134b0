#include "sif/norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sif {

NormKind parse_norm_kind(std::string_view name) {
  if (name == "max") return NormKind::max;
  if (name == "sum") return NormKind::sum;
  if (name == "euclidean") return NormKind::euclidean;
  if (name == "weighted-max") return NormKind::weighted_max;
  if (name == "weighted-sum") return NormKind::weighted_sum;
  throw std::invalid_argument("unknown norm '" + std::string(name) +
                              "' (expected max, sum, euclidean, weighted-max or weighted-sum)");
}

std::string_view to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::max: return "max";
    case NormKind::sum: return "sum";
    case NormKind::euclidean: return "euclidean";
    case NormKind::weighted_max: return "weighted-max";
    case NormKind::weighted_sum: return "weighted-sum";
  }
  return "?";
}

MonotoneNorm::MonotoneNorm(NormKind kind) : kind_(kind) {
  if (kind == NormKind::weighted_max || kind == NormKind::weighted_sum) {
    throw std::invalid_argument(std::string(to_string(kind)) + " norm requires weights");
  }
}

MonotoneNorm::MonotoneNorm(NormKind kind, PositiveVector weights)
    : kind_(kind), weights_(std::move(weights)) {
  if (kind != NormKind::weighted_max && kind != NormKind::weighted_sum) {
    throw std::invalid_argument(std::string(to_string(kind)) + " norm takes no weights");
  }
}

void MonotoneNorm::check_dim(std::size_t n) const {
  if (weights_) require_same_dim(weights_->size(), n, std::string(to_string(kind_)) + " norm weights");
}

double MonotoneNorm::operator()(std::span<const double> x) const {
  check_dim(x.size());
  double acc = 0.0;
  switch (kind_) {
    case NormKind::max:
      for (double e : x) acc = std::max(acc, std::abs(e));
      return acc;
    case NormKind::sum:
      for (double e : x) acc += std::abs(e);
      return acc;
    case NormKind::euclidean: {
      // Scaled accumulation keeps large loads away from overflow.
      const double scale = max_abs(x);
      if (scale == 0.0) return 0.0;
      for (double e : x) {
        const double r = e / scale;
        acc += r * r;
      }
      return scale * std::sqrt(acc);
    }
    case NormKind::weighted_max:
      for (std::size_t i = 0; i < x.size(); ++i) acc = std::max(acc, (*weights_)[i] * std::abs(x[i]));
      return acc;
    case NormKind::weighted_sum:
      for (std::size_t i = 0; i < x.size(); ++i) acc += (*weights_)[i] * std::abs(x[i]);
      return acc;
  }
  return acc;
}

double norm_eval(const MonotoneNorm& norm, const NonnegVector& x) { return norm(x); }

namespace {

// max and sum are the weighted kinds with unit weights.
enum class Shape { max_like, sum_like, euclidean };

struct Canonical {
  Shape shape;
  Vec weights;
};

Canonical canonical(const MonotoneNorm& n, std::size_t dim) {
  n.check_dim(dim);
  switch (n.kind()) {
    case NormKind::max: return {Shape::max_like, Vec(dim, 1.0)};
    case NormKind::sum: return {Shape::sum_like, Vec(dim, 1.0)};
    case NormKind::euclidean: return {Shape::euclidean, {}};
    case NormKind::weighted_max: return {Shape::max_like, n.weights()->values()};
    case NormKind::weighted_sum: return {Shape::sum_like, n.weights()->values()};
  }
  throw std::logic_error("unreachable norm kind");
}

}  // namespace

double norm_equivalence_alpha(const MonotoneNorm& a, const MonotoneNorm& b, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("norm_equivalence_alpha: dimension must be at least 1");
  const Canonical ca = canonical(a, dim);
  const Canonical cb = canonical(b, dim);

  double max_ratio = 0.0;
  double sum_ratio = 0.0;
  double sum_sq = 0.0;
  double max_w = 0.0;

  if (ca.shape == Shape::euclidean && cb.shape == Shape::euclidean) return 1.0;

  if (ca.shape == Shape::euclidean) {
    // sup ||x||_2 over the unit ball of b: the box corner (max) or the farthest vertex (sum).
    for (double v : cb.weights) {
      sum_sq += 1.0 / (v * v);
      max_w = std::max(max_w, 1.0 / v);
    }
    return cb.shape == Shape::max_like ? std::sqrt(sum_sq) : max_w;
  }
  if (cb.shape == Shape::euclidean) {
    for (double w : ca.weights) {
      sum_sq += w * w;
      max_w = std::max(max_w, w);
    }
    return ca.shape == Shape::max_like ? max_w : std::sqrt(sum_sq);
  }

  for (std::size_t i = 0; i < dim; ++i) {
    const double r = ca.weights[i] / cb.weights[i];
    max_ratio = std::max(max_ratio, r);
    sum_ratio += r;
  }
  if (ca.shape == Shape::sum_like && cb.shape == Shape::max_like) return sum_ratio;
  return max_ratio;
}

}  // namespace sif
