#include <gtest/gtest.h>

#include <cstdlib>

#include "mdm/exact_oracle.hpp"
#include "mdm/mc_mean.hpp"

using namespace mdm;

TEST(MomentAccumulator, MergeMatchesSequential) {
  RandomStream rng(1, 0);
  detail::MomentAccumulator all(2), a(2), b(2);
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample_density(MeasureSpec::zhsl(2), rng).matrix();
    all.add(x);
    (i < 377 ? a : b).add(x);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), 1000u);
  // two summation orders; rounding drift is O(n eps)
  EXPECT_LT(max_abs(a.mean() - all.mean()), 1e-12);
  EXPECT_LT((a.stderr() - all.stderr()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MomentAccumulator, KnownMoments) {
  detail::MomentAccumulator acc(1);
  for (double v : {1.0, 2.0, 3.0, 4.0}) acc.add(ComplexMatrix::Constant(1, 1, Complex(v, -v)));
  EXPECT_DOUBLE_EQ(acc.mean()(0, 0).real(), 2.5);
  EXPECT_DOUBLE_EQ(acc.mean()(0, 0).imag(), -2.5);
  // sample variance 5/3, stderr sqrt(5/3/4)
  EXPECT_NEAR(acc.stderr()(0, 0), std::sqrt(5.0 / 12), 1e-15);
}

TEST(EstimateMean, RejectsTooFewSamples) {
  EXPECT_THROW(estimate_mean(MeasureSpec::zhsl(2), 2, 99, 0, 1), DomainError);
  EXPECT_THROW(estimate_mean(MeasureSpec::zhsl(2), 0, 1000, 0, 1), DomainError);
}

TEST(EstimateMean, BitwiseIndependentOfWorkerCount) {
  EstimateOptions opt;
  opt.chunk_size = 333;
  const auto a = estimate_mean(MeasureSpec::zhsl(3), 2, 5000, 17, 1, opt);
  const auto b = estimate_mean(MeasureSpec::zhsl(3), 2, 5000, 17, 4, opt);
  const auto c = estimate_mean(MeasureSpec::zhsl(3), 2, 5000, 17, 3, opt);
  EXPECT_TRUE(a.mean == b.mean);
  EXPECT_TRUE(a.mean == c.mean);
  EXPECT_TRUE(a.stderr == b.stderr);
  const auto d = estimate_mean(MeasureSpec::zhsl(3), 2, 5000, 18, 1, opt);
  EXPECT_FALSE(a.mean == d.mean);
}

TEST(EstimateMean, MetadataAndInvariants) {
  const auto est = estimate_mean(MeasureSpec::zhsl(2), 3, 20000, 5, 2);
  EXPECT_EQ(est.n_samples, 20000u);
  EXPECT_EQ(est.seed, 5u);
  EXPECT_EQ(est.workers, 2u);
  EXPECT_EQ(est.scenario.power, 3);
  EXPECT_EQ(est.mean.rows(), 8);
  EXPECT_NEAR(est.mean.trace().real(), 1.0, 1e-12);  // every sample has unit trace
  EXPECT_LT(hermiticity_defect(est.mean), 1e-15);
  EXPECT_GT(est.stderr_max(), 0.0);
}

TEST(EstimateMean, ConvergesToOracle) {
  const auto est = estimate_mean(MeasureSpec::zhsl(2), 2, 50000, 3, 2);
  const auto rep = convergence_report(est, haar_mean(2, 2).mean.to_complex());
  EXPECT_EQ(rep.entries_over_gate, 0u) << rep.max_z;
  EXPECT_TRUE(rep.zero_pattern_agrees());
}

TEST(EstimateMean, ProductMeasureMatchesCompositeOracle) {
  const auto spec = MeasureSpec::product({MeasureSpec::zhsl(2), MeasureSpec::zhsl(3)});
  const auto est = estimate_mean(spec, 2, 40000, 9, 2);
  EXPECT_EQ(est.scenario.factors, (std::vector<std::size_t>{2, 3}));
  const auto ref = composite_haar_mean(Scenario({2, 3}, 2), std::vector<Rational>{0, 0}).mean.to_complex();
  const auto rep = convergence_report(est, ref);
  EXPECT_EQ(rep.entries_over_gate, 0u) << rep.max_z;
}

TEST(ConvergenceReport, CountsAndZeroPattern) {
  MeanEstimate est;
  est.mean = ComplexMatrix::Zero(2, 2);
  est.mean(0, 0) = 0.5;
  est.mean(0, 1) = 0.01;
  est.stderr = Eigen::MatrixXd::Constant(2, 2, 0.001);
  ComplexMatrix ref = ComplexMatrix::Zero(2, 2);
  ref(0, 0) = 0.5;
  const auto rep = convergence_report(est, ref);
  EXPECT_EQ(rep.entries_over_gate, 1u);
  EXPECT_NEAR(rep.max_z, 10.0, 1e-9);
  EXPECT_EQ(rep.zero_pattern_mismatches, 1u);
  EXPECT_THROW(convergence_report(est, ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST(DefaultWorkers, ReadsEnvironment) {
  ::setenv("MDM_WORKERS", "3", 1);
  EXPECT_EQ(default_workers(), 3u);
  ::setenv("MDM_WORKERS", "junk", 1);
  EXPECT_GE(default_workers(), 1u);
  ::unsetenv("MDM_WORKERS");
  EXPECT_GE(default_workers(), 1u);
}
