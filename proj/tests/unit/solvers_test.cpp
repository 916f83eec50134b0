#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sif/asymptotic.hpp"
#include "sif/solvers.hpp"
#include "sif/spectral.hpp"
#include "support/oracles.hpp"

namespace sif {
namespace {

AffineMapping affine(double coupling, double offset = 1.0) {
  return AffineMapping(Matrix::from_rows({{0, coupling}, {coupling, 0}}), PositiveVector{offset, offset});
}

TEST(FixedPoint, AffineExample) {
  const FixedPointResult r = fixed_point(affine(0.5));
  ASSERT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.stop, StopReason::tolerance);
  EXPECT_NEAR(r.x[0], 2.0, 1e-8);
  EXPECT_NEAR(r.x[1], 2.0, 1e-8);
  EXPECT_LE(r.report.residual, 1e-10);
}

TEST(FixedPoint, InfeasibleHitsGuard) {
  const FixedPointResult r = fixed_point(affine(1.5));
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.stop, StopReason::divergence_guard);
}

TEST(FixedPoint, ConstantMappingTakesOneStep) {
  const AffineMapping m(Matrix(2, 2, 0.0), PositiveVector{3, 4});
  const FixedPointResult r = fixed_point(m);
  ASSERT_TRUE(r.report.converged);
  EXPECT_EQ(r.x.values(), (Vec{3, 4}));
  EXPECT_LE(r.report.iterations, 2u);
}

TEST(FixedPoint, MaxIterationsIsReported) {
  FixedPointOptions o;
  o.max_iter = 3;
  const FixedPointResult r = fixed_point(affine(0.9), o);
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.stop, StopReason::max_iterations);
}

TEST(FixedPoint, StartVectorDoesNotMatter) {
  std::mt19937_64 rng(31);
  const auto inst = testing::random_affine(rng, 5, 0.85);
  const AffineMapping m(inst.x, PositiveVector(inst.u));
  const FixedPointResult a = fixed_point(m);
  const FixedPointResult b = fixed_point(m, NonnegVector::filled(5, 1e3));
  ASSERT_TRUE(a.report.converged && b.report.converged);
  EXPECT_LE(testing::max_rel_diff(a.x.values(), b.x.values()), 1e-8);
}

TEST(FixedPoint, LoadMatchesSelfConsistency) {
  std::mt19937_64 rng(37);
  const LoadScenario s = testing::random_load(rng, 0.6).scenario;
  const FixedPointResult r = fixed_point(LoadMapping::uncapped(s));
  ASSERT_TRUE(r.report.converged);
  EXPECT_LE(testing::max_rel_diff(load_eval(s, r.x.span()), r.x.values()), 1e-9);
}

TEST(SolveCanonical, ClosedFormOnAffineExample) {
  const MonotoneNorm a = MonotoneNorm::max();
  for (double p : {0.1, 2.0, 1e6}) {
    const CanonicalSolution s = solve_canonical(affine(0.5), a, p);
    ASSERT_TRUE(s.report.converged) << p;
    EXPECT_NEAR(s.c_star, p / (0.5 * p + 1), 1e-9 * s.c_star);
    EXPECT_NEAR(s.p_star[0], p, 1e-12 * p);
    EXPECT_NEAR(s.p_star[1], p, 1e-12 * p);
  }
  EXPECT_NEAR(solve_canonical(affine(0.5), a, 0.1).c_star, 0.0952, 1e-4);
  EXPECT_NEAR(solve_canonical(affine(0.5), a, 2).c_star, 1.0, 1e-9);
}

TEST(SolveCanonical, RejectsNonPositiveBudget) {
  EXPECT_THROW(solve_canonical(affine(0.5), MonotoneNorm::max(), 0.0), std::invalid_argument);
  EXPECT_THROW(solve_canonical(affine(0.5), MonotoneNorm::max(), -1.0), std::invalid_argument);
}

TEST(SolveCanonical, ConstraintActiveAndResidualSmall) {
  std::mt19937_64 rng(41);
  const LoadScenario s = testing::random_load(rng, 2.0).scenario;
  const LoadMapping m = LoadMapping::uncapped(s);
  const MonotoneNorm sum = MonotoneNorm::sum();
  double last_c = 0.0;
  Vec last_p(s.power.size(), 0.0);
  for (double p : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const CanonicalSolution sol = solve_canonical(m, sum, p);
    ASSERT_TRUE(sol.report.converged);
    EXPECT_NEAR(sum(sol.p_star.span()), p, 1e-12 * p);
    const Vec t = m.evaluate(sol.p_star.span());
    double res = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) res = std::max(res, std::abs(sol.p_star[i] - sol.c_star * t[i]));
    EXPECT_LE(res / max_abs(sol.p_star.span()), 1e-9);
    EXPECT_GT(sol.c_star, last_c);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_GT(sol.p_star[i], last_p[i]);
    last_c = sol.c_star;
    last_p = sol.p_star.values();
  }
}

TEST(ConditionalEigen, PerronPairOfAsymptoticMap) {
  const AsymptoticMapping a = exact_asymptotic_affine(affine(0.5));
  const EigenResult e = conditional_eigen(a, MonotoneNorm::max());
  ASSERT_TRUE(e.report.converged);
  EXPECT_NEAR(e.pair.lambda, 0.5, 1e-12);
  EXPECT_NEAR(e.pair.x[0], 1.0, 1e-12);
  EXPECT_NEAR(e.pair.x[1], 1.0, 1e-12);

  const EigenResult s = conditional_eigen(a, MonotoneNorm::sum());
  EXPECT_NEAR(s.pair.x[0], 0.5, 1e-12);
  EXPECT_NEAR(s.pair.lambda, 0.5, 1e-12);
}

TEST(ConditionalEigen, InterferenceMappingItself) {
  const EigenResult e = conditional_eigen(affine(0.5), MonotoneNorm::max());
  ASSERT_TRUE(e.report.converged);
  EXPECT_NEAR(e.pair.lambda, 1.5, 1e-12);
}

TEST(ConditionalEigen, ZeroMappingReportsZeroDirection) {
  const AsymptoticMapping zero = AsymptoticMapping::linear(Matrix(3, 3, 0.0));
  const EigenResult e = conditional_eigen(zero, MonotoneNorm::max());
  EXPECT_TRUE(e.zero_direction);
  EXPECT_EQ(e.pair.lambda, 0.0);
}

TEST(ConditionalEigen, AgreesWithSpectralRadiusOnIrreducibleMatrices) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 20; ++k) {
    const auto inst = testing::random_affine(rng, 2 + k % 5, 0.3 + 0.1 * k);
    const AsymptoticMapping a = AsymptoticMapping::linear(inst.x);
    const EigenResult e = conditional_eigen(a, MonotoneNorm::euclidean());
    const SpectralResult r = collatz_wielandt(inst.x);
    ASSERT_TRUE(e.report.converged);
    EXPECT_NEAR(e.pair.lambda, r.rho, 1e-8 * r.rho);
    EXPECT_NEAR(MonotoneNorm::euclidean()(e.pair.x.span()), 1.0, 1e-9);
  }
}

TEST(ConditionalEigen, DirectionIgnoresStartScale) {
  std::mt19937_64 rng(47);
  const auto inst = testing::random_affine(rng, 4, 0.9);
  const AsymptoticMapping a = AsymptoticMapping::linear(inst.x);
  NormalizedOptions o1, o2;
  o1.start = Vec{1, 2, 3, 4};
  o2.start = Vec{1000, 2000, 3000, 4000};
  const EigenResult e1 = conditional_eigen(a, MonotoneNorm::max(), o1);
  const EigenResult e2 = conditional_eigen(a, MonotoneNorm::max(), o2);
  EXPECT_LE(max_abs_diff(e1.pair.x.span(), e2.pair.x.span()), 1e-8);
}

TEST(ConditionalEigen, PeriodicMatrixStillConverges) {
  // Asymmetric anti-diagonal: plain power iteration oscillates forever.
  const AsymptoticMapping a = AsymptoticMapping::linear(Matrix::from_rows({{0, 2}, {0.5, 0}}));
  NormalizedOptions o;
  o.start = Vec{1, 1};
  const EigenResult e = conditional_eigen(a, MonotoneNorm::max(), o);
  ASSERT_TRUE(e.report.converged);
  EXPECT_NEAR(e.pair.lambda, 1.0, 1e-9);
}

}  // namespace
}  // namespace sif
