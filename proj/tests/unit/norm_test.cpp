#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sif/norm.hpp"

namespace sif {
namespace {

TEST(NormEval, MaxPicksLargestEntry) { EXPECT_EQ(norm_eval(MonotoneNorm::max(), NonnegVector{3, 1, 2}), 3.0); }

TEST(NormEval, SumOfZeroVectorIsZero) { EXPECT_EQ(norm_eval(MonotoneNorm::sum(), NonnegVector{0, 0}), 0.0); }

TEST(NormEval, WeightedSum) {
  const MonotoneNorm n(NormKind::weighted_sum, PositiveVector{2, 1});
  EXPECT_EQ(norm_eval(n, NonnegVector{1, 4}), 6.0);
}

TEST(NormEval, WeightedMax) {
  const MonotoneNorm n(NormKind::weighted_max, PositiveVector{2, 1});
  EXPECT_EQ(norm_eval(n, NonnegVector{1, 1.5}), 2.0);
}

TEST(NormEval, EuclideanSurvivesHugeEntries) {
  EXPECT_DOUBLE_EQ(norm_eval(MonotoneNorm::euclidean(), NonnegVector{3e200, 4e200}), 5e200);
}

TEST(NormEval, WeightDimensionMismatchThrows) {
  const MonotoneNorm n(NormKind::weighted_sum, PositiveVector{2, 1});
  EXPECT_THROW(norm_eval(n, NonnegVector{1, 2, 3}), DimensionError);
}

TEST(NormKinds, WeightedKindsNeedWeights) {
  EXPECT_THROW(MonotoneNorm{NormKind::weighted_max}, std::invalid_argument);
  EXPECT_THROW(MonotoneNorm(NormKind::max, PositiveVector{1, 1}), std::invalid_argument);
}

TEST(NormKinds, NamesRoundTrip) {
  for (NormKind k : {NormKind::max, NormKind::sum, NormKind::euclidean, NormKind::weighted_max,
                     NormKind::weighted_sum}) {
    EXPECT_EQ(parse_norm_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_norm_kind("l3"), std::invalid_argument);
}

TEST(NormEquivalence, TableValues) {
  EXPECT_EQ(norm_equivalence_alpha(MonotoneNorm::max(), MonotoneNorm::sum(), 5), 1.0);
  EXPECT_EQ(norm_equivalence_alpha(MonotoneNorm::sum(), MonotoneNorm::max(), 5), 5.0);
  EXPECT_DOUBLE_EQ(norm_equivalence_alpha(MonotoneNorm::euclidean(), MonotoneNorm::max(), 4), 2.0);
  EXPECT_DOUBLE_EQ(norm_equivalence_alpha(MonotoneNorm::sum(), MonotoneNorm::euclidean(), 9), 3.0);
  EXPECT_EQ(norm_equivalence_alpha(MonotoneNorm::max(), MonotoneNorm::euclidean(), 9), 1.0);
  EXPECT_EQ(norm_equivalence_alpha(MonotoneNorm::euclidean(), MonotoneNorm::sum(), 9), 1.0);
}

// Brute-force sup of ||x||_a / ||x||_b over a grid of the nonnegative unit box.
double grid_ratio(const MonotoneNorm& a, const MonotoneNorm& b) {
  double best = 0.0;
  const int steps = 20;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j)
      for (int k = 0; k <= steps; ++k) {
        if (i + j + k == 0) continue;
        const NonnegVector x{i / double(steps), j / double(steps), k / double(steps)};
        best = std::max(best, a(x) / b(x));
      }
  return best;
}

class NormPairs : public ::testing::TestWithParam<std::pair<int, int>> {};

std::vector<MonotoneNorm> all_norms() {
  return {MonotoneNorm::max(), MonotoneNorm::sum(), MonotoneNorm::euclidean(),
          MonotoneNorm(NormKind::weighted_max, PositiveVector{0.5, 2, 1}),
          MonotoneNorm(NormKind::weighted_sum, PositiveVector{3, 0.25, 1})};
}

TEST_P(NormPairs, AlphaBoundsAndIsTight) {
  const auto norms = all_norms();
  const MonotoneNorm& a = norms[GetParam().first];
  const MonotoneNorm& b = norms[GetParam().second];
  const double alpha = norm_equivalence_alpha(a, b, 3);
  const double sup = grid_ratio(a, b);
  EXPECT_LE(sup, alpha * (1 + 1e-12));
  // Corners and the all-ones direction are on the grid, so the grid reaches the sup closely.
  EXPECT_GE(sup, alpha * 0.95);

  std::mt19937_64 rng(7);
  std::exponential_distribution<double> e(1.0);
  for (int s = 0; s < 500; ++s) {
    const NonnegVector x{e(rng), e(rng), e(rng)};
    EXPECT_LE(a(x), alpha * b(x) * (1 + 1e-12));
  }
}

std::vector<std::pair<int, int>> pairs() {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out.emplace_back(i, j);
  return out;
}

INSTANTIATE_TEST_SUITE_P(AllKinds, NormPairs, ::testing::ValuesIn(pairs()));

TEST(NormProperties, MonotoneHomogeneousTriangle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0), frac(0.0, 1.0);
  for (const MonotoneNorm& n : all_norms()) {
    for (int s = 0; s < 300; ++s) {
      const Vec y{u(rng), u(rng), u(rng)};
      const Vec x{y[0] * frac(rng), y[1] * frac(rng), y[2] * frac(rng)};
      const Vec z{u(rng), u(rng), u(rng)};
      EXPECT_LE(n(x), n(y));
      const double c = u(rng);
      EXPECT_NEAR(n(scaled(y, c)), c * n(y), 1e-12 * c * n(y));
      const Vec w{y[0] + z[0], y[1] + z[1], y[2] + z[2]};
      EXPECT_LE(n(w), (n(y) + n(z)) * (1 + 1e-14));
    }
    EXPECT_EQ(n(Vec{0, 0, 0}), 0.0);
  }
}

}  // namespace
}  // namespace sif
