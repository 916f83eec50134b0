#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sif/asymptotic.hpp"
#include "support/oracles.hpp"

namespace sif {
namespace {

AffineMapping example_affine() {
  return AffineMapping(Matrix::from_rows({{0, 0.5}, {0.5, 0}}), PositiveVector{1, 1});
}

LoadScenario two_cells() {
  LoadScenario s;
  s.assignment = {{0}, {1}};
  s.gains = {{1.0, 0.5}, {0.5, 1.0}};
  s.demands = {1e6, 1e6};
  s.resource_blocks = 100;
  s.rb_bandwidth = 1.8e5;
  s.noise = 1e-9;
  s.power = {1, 1};
  return s;
}

TEST(EstimateAsymptotic, AffineUnitDirection) {
  const AsymptoticEstimate e = estimate_asymptotic(example_affine(), NonnegVector{1, 0});
  ASSERT_TRUE(e.converged);
  // u / h survives at the stopping rung; it is below the ladder's agreement tolerance.
  EXPECT_NEAR(e.value[0], 0.0, LadderConfig{}.rtol * 0.5);
  EXPECT_NEAR(e.value[1], 0.5, LadderConfig{}.rtol * 0.5);
  EXPECT_FALSE(e.nonmonotone);
}

TEST(EstimateAsymptotic, OriginMapsToZero) {
  const AsymptoticEstimate e = estimate_asymptotic(example_affine(), NonnegVector{0, 0});
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.value.values(), (Vec{0, 0}));
}

TEST(EstimateAsymptotic, SublinearGoesToZero) {
  const CustomMapping root(1, [](std::span<const double> v) { return Vec{std::sqrt(v[0]) + 1}; });
  LadderConfig cfg;
  cfg.scales = {1e3, 1e6, 1e9, 1e12, 1e15, 1e18, 1e21};
  const AsymptoticEstimate e = estimate_asymptotic(root, NonnegVector{1}, cfg);
  ASSERT_TRUE(e.converged);
  EXPECT_LT(e.value[0], 1e-8);
}

TEST(EstimateAsymptotic, DefaultLadderReportsSlowLimits) {
  const CustomMapping root(1, [](std::span<const double> v) { return Vec{std::sqrt(v[0]) + 1}; });
  EXPECT_FALSE(estimate_asymptotic(root, NonnegVector{1}).converged);
  const AsymptoticMapping a = AsymptoticMapping::numeric(std::make_shared<CustomMapping>(root));
  EXPECT_THROW(a.evaluate(Vec{1}), NonConvergenceError);
}

TEST(EstimateAsymptotic, FlagsGrowthAlongTheLadder) {
  const CustomMapping bad(1, [](std::span<const double> v) { return Vec{1 + v[0] + 1e-12 * v[0] * v[0]}; });
  const AsymptoticEstimate e = estimate_asymptotic(bad, NonnegVector{1});
  EXPECT_TRUE(e.nonmonotone);
}

TEST(LadderConfig, Validation) {
  LadderConfig c;
  c.scales = {1e3, 1e3};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.scales = {1e3};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.rtol = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(ExactAsymptoticAffine, DropsOffset) {
  const AsymptoticMapping a = exact_asymptotic_affine(example_affine());
  ASSERT_TRUE(a.is_linear());
  EXPECT_EQ(a.matrix(), Matrix::from_rows({{0, 0.5}, {0.5, 0}}));
  EXPECT_EQ(asymptotic_eval(a, NonnegVector{2, 0}).values(), (Vec{0, 1}));
  EXPECT_EQ(asymptotic_eval(a, NonnegVector{0, 0}).values(), (Vec{0, 0}));

  const AffineMapping constant(Matrix(3, 3, 0.0), PositiveVector{1, 2, 3});
  EXPECT_TRUE(exact_asymptotic_affine(constant).matrix().is_zero());
}

TEST(ExactAsymptoticAffine, AgreesWithLadder) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.1, 10);
  const auto inst = testing::random_affine(rng, 5, 1.3);
  const AffineMapping m(inst.x, PositiveVector(inst.u));
  const AsymptoticMapping exact = exact_asymptotic_affine(m);
  const AsymptoticMapping numeric = AsymptoticMapping::numeric(std::make_shared<AffineMapping>(m));
  for (int k = 0; k < 50; ++k) {
    const Vec x{u(rng), u(rng), u(rng), u(rng), u(rng)};
    EXPECT_LE(testing::max_rel_diff(numeric.evaluate(x), exact.evaluate(x)), 1e-6);
  }
}

TEST(ExactAsymptoticLoad, TwoCellEntry) {
  const Matrix m = load_coupling_matrix(two_cells());
  const double expected = std::log(2.0) * 1e6 * 0.5 / (100 * 1.8e5 * 1);
  EXPECT_DOUBLE_EQ(m(0, 1), expected);
  EXPECT_DOUBLE_EQ(m(1, 0), expected);
  EXPECT_NEAR(expected, 0.01925, 1e-5);
  const Vec y = exact_asymptotic_load(two_cells()).evaluate(Vec{1, 1});
  EXPECT_NEAR(y[0], 0.01925, 1e-5);
  EXPECT_NEAR(y[1], 0.01925, 1e-5);
}

TEST(ExactAsymptoticLoad, MatchesOracleAndHasZeroDiagonal) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 20; ++k) {
    const LoadScenario s = testing::random_load(rng, 0.5 + k * 0.1).scenario;
    const Matrix got = exact_asymptotic_load(s).matrix();
    const Matrix want = testing::load_asymptotic_oracle(s);
    for (std::size_t i = 0; i < got.rows(); ++i) {
      EXPECT_EQ(got(i, i), 0.0);
      for (std::size_t j = 0; j < got.cols(); ++j) EXPECT_NEAR(got(i, j), want(i, j), 1e-14 * std::max(1.0, want(i, j)));
    }
  }
}

TEST(ExactAsymptoticLoad, CapsDoNotChangeIt) {
  LoadScenario s = two_cells();
  const Matrix plain = exact_asymptotic_load(s).matrix();
  s.rate_caps = Vec{1e5, 3e5};
  EXPECT_EQ(exact_asymptotic_load(s).matrix(), plain);

  const LoadMapping capped = LoadMapping::capped(s);
  const AsymptoticEstimate e = estimate_asymptotic(capped, NonnegVector{0.4, 0.9});
  ASSERT_TRUE(e.converged);
  EXPECT_LE(testing::max_rel_diff(e.value.values(), plain.apply(Vec{0.4, 0.9})), 1e-6);
}

TEST(AsymptoticProperties, LinearAndNumericPass) {
  std::mt19937_64 rng(29);
  const LoadScenario s = testing::random_load(rng, 0.9).scenario;
  EXPECT_TRUE(check_asymptotic_properties(exact_asymptotic_load(s)).passed());
  EXPECT_TRUE(check_asymptotic_properties(exact_asymptotic_affine(example_affine())).passed());
  const auto base = std::make_shared<LoadMapping>(LoadMapping::uncapped(s));
  EXPECT_TRUE(check_asymptotic_properties(AsymptoticMapping::numeric(base), 100).passed());
}

TEST(AsymptoticMapping, NumericHasNoMatrix) {
  const auto base = std::make_shared<AffineMapping>(example_affine());
  const AsymptoticMapping a = AsymptoticMapping::numeric(base);
  EXPECT_FALSE(a.is_linear());
  EXPECT_THROW(a.matrix(), std::logic_error);
  EXPECT_EQ(a.dim(), 2u);
}

}  // namespace
}  // namespace sif
