#include <gtest/gtest.h>

#include <cmath>

#include "bockstein/distribution.hpp"
#include "bockstein/verification.hpp"

using namespace bockstein;

// ---------------------------------------------------------------------------
// count_report

TEST(CountReport, SquareRankOne) {
  const auto r = count_report(Prime(2), 2, 2, 1);
  EXPECT_EQ(r.hom_size, 2);
  EXPECT_EQ(r.fiber_size, 8);
  EXPECT_EQ(r.size_L_psi, 16);
  EXPECT_EQ(r.theorem_probability, BigRational(1, 2));
}

TEST(CountReport, ZeroPsi) {
  const auto r = count_report(Prime(2), 2, 2, 2);
  EXPECT_EQ(r.fiber_size, 1);
  EXPECT_EQ(r.hom_size, 16);
}

TEST(CountReport, TallProbability) {
  EXPECT_EQ(count_report(Prime(3), 3, 2, 1).theorem_probability, BigRational(1, 9));
  EXPECT_EQ(count_report(Prime(3), 3, 2, 1).theorem_probability.str(), "1/9");
}

TEST(CountReport, InfeasibleKernelDimension) {
  EXPECT_THROW(count_report(Prime(2), 2, 2, 3), std::invalid_argument);
  // A 1x3 map has rank at most 1, so its kernel has dimension at least 2.
  EXPECT_THROW(count_report(Prime(2), 1, 3, 1), std::invalid_argument);
  EXPECT_NO_THROW(count_report(Prime(2), 1, 3, 2));
}

TEST(CountReport, LargeExponentsStayExact) {
  const auto r = count_report(Prime(1048573), 8, 8, 4);
  EXPECT_EQ(r.size_L_psi, r.hom_size * r.fiber_size);
  EXPECT_EQ(r.size_L_psi, big_pow(1048573, 64));
}

TEST(CountingIdentity, AllFeasibleTriplesUpToEight) {
  EXPECT_TRUE(check_counting_identity(8).passed);
}

// ---------------------------------------------------------------------------
// exhaustive_census

TEST(Census, ScalarZeroPsi) {
  const GammaContext ctx(MatrixModP(Prime(2), {{0}}));
  const auto c = exhaustive_census(ctx);
  EXPECT_EQ(c.total, 2u);
  EXPECT_EQ(c.expected_fiber_size, 1);
  const CountTable expected{{BocksteinMatrix(Prime(2), 1, 1, {0}).serialize(), 1},
                            {BocksteinMatrix(Prime(2), 1, 1, {1}).serialize(), 1}};
  EXPECT_EQ(c.counts, expected);
  EXPECT_TRUE(c.passed());
}

TEST(Census, RankOneSquare) {
  const auto c = exhaustive_census(GammaContext(MatrixModP(Prime(2), {{1, 0}, {0, 0}})));
  EXPECT_EQ(c.counts.size(), 2u);
  for (const auto& [beta, count] : c.counts)
    EXPECT_EQ(count, 8u);
  EXPECT_EQ(c.total, 16u);
}

TEST(Census, InvertiblePsiHasOneEmptyBeta) {
  const auto c = exhaustive_census(GammaContext(MatrixModP(Prime(2), {{1, 1}, {0, 1}})));
  ASSERT_EQ(c.counts.size(), 1u);
  EXPECT_EQ(c.counts.begin()->first, BocksteinMatrix(Prime(2), 0, 0, {}).serialize());
  EXPECT_EQ(c.counts.begin()->second, 16u);
}

TEST(Census, BudgetExceeded) {
  EXPECT_THROW(exhaustive_census(GammaContext(MatrixModP(Prime(2), 1, 5)), 8), BudgetExceeded);
}

TEST(Census, ThreadCountDoesNotChangeResult) {
  const GammaContext ctx(MatrixModP(Prime(3), {{1, 2}, {2, 1}}));
  EXPECT_EQ(exhaustive_census(ctx, kDefaultBudget, 1), exhaustive_census(ctx, kDefaultBudget, 5));
}

TEST(CensusProperty, FibersAndHomSizesMatchClosedForms) {
  std::vector<Shape> shapes{{2, 3, 2}, {2, 2, 3}, {2, 3, 3}};
  for (std::uint64_t p : {2, 3})
    for (std::size_t m = 0; m <= 2; ++m)
      for (std::size_t n = 0; n <= 2; ++n)
        shapes.push_back({p, m, n});
  const auto result = check_fiber_sizes(all_psis(shapes), 4);
  EXPECT_TRUE(result.passed) << result.lines.size();
}

// ---------------------------------------------------------------------------
// sample_conditional

TEST(SampleConditional, SeededRegression) {
  const GammaContext ctx(MatrixModP(Prime(2), {{1, 0}, {0, 0}}));
  const auto s = sample_conditional(ctx, 10000, 42);
  EXPECT_EQ(s.hom_size, 2u);
  EXPECT_EQ(s.degrees_of_freedom, 1u);
  const CountTable expected{{BocksteinMatrix(Prime(2), 1, 1, {0}).serialize(), 5067},
                            {BocksteinMatrix(Prime(2), 1, 1, {1}).serialize(), 4933}};
  EXPECT_EQ(s.counts, expected);
  EXPECT_DOUBLE_EQ(s.chi_square, 2.0 * 67 * 67 / 5000);
  EXPECT_GT(s.p_value, 0.001);
  EXPECT_NEAR(s.p_value, 0.18024534492890476, 1e-12);
}

TEST(SampleConditional, DeterministicAcrossRunsAndThreads) {
  const GammaContext ctx(MatrixModP(Prime(3), {{1, 0, 2}, {0, 0, 0}, {2, 0, 1}}));
  const auto a = sample_conditional(ctx, 5000, 7, 1);
  EXPECT_EQ(a, sample_conditional(ctx, 5000, 7, 1));
  EXPECT_EQ(a, sample_conditional(ctx, 5000, 7, 3));
  EXPECT_NE(a.counts, sample_conditional(ctx, 5000, 8, 1).counts);
}

TEST(SampleConditional, TotalVariationGuard) {
  for (const auto& c : uniformity_cases()) {
    const GammaContext ctx(c.psi);
    const std::uint64_t trials = 20000;
    const auto s = sample_conditional(ctx, trials, c.seed + 1);
    double tv = 0.0;
    std::uint64_t seen = 0;
    for (const auto& [beta, count] : s.counts) {
      tv += std::fabs(double(count) / trials - 1.0 / s.hom_size);
      seen += count;
    }
    tv += double(s.hom_size - s.counts.size()) / s.hom_size;
    tv /= 2;
    EXPECT_EQ(seen, trials);
    EXPECT_LT(tv, 3.0 * std::sqrt(double(s.hom_size) / trials));
  }
}

TEST(SampleConditional, RejectsZeroTrialsAndHugeTables) {
  const GammaContext ctx(MatrixModP(Prime(2), 3, 3));
  EXPECT_THROW(sample_conditional(ctx, 0, 1), std::invalid_argument);
  EXPECT_THROW(sample_conditional(ctx, 10, 1, 1, 100), BudgetExceeded);  // 2^9 cells
}

// ---------------------------------------------------------------------------
// Joint distribution

TEST(JointExhaustive, ScalarCase) {
  const auto joint = joint_exhaustive(Prime(2), 1, 1);
  ASSERT_EQ(joint.bins.size(), 2u);
  const auto& zero = joint.bins.at({0});
  EXPECT_EQ(zero.total, 2u);
  const CountTable expected_zero{{BocksteinMatrix(Prime(2), 1, 1, {0}).serialize(), 1},
                                 {BocksteinMatrix(Prime(2), 1, 1, {1}).serialize(), 1}};
  EXPECT_EQ(zero.counts, expected_zero);
  const auto& one = joint.bins.at({1});
  const CountTable expected_one{{BocksteinMatrix(Prime(2), 0, 0, {}).serialize(), 2}};
  EXPECT_EQ(one.counts, expected_one);
}

TEST(JointExhaustive, FlatWithinEveryBin) {
  EXPECT_TRUE(check_joint_flatness({{2, 1, 1}, {2, 2, 1}, {2, 1, 2}, {2, 2, 2}, {3, 1, 2}}, 4).passed);
}

TEST(SampleUnconditional, DegenerateDimensions) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{0, 2}, {3, 0}, {0, 0}}) {
    const auto joint = sample_unconditional(Prime(3), m, n, 50, 1);
    ASSERT_EQ(joint.bins.size(), 1u);
    const auto& bin = joint.bins.begin()->second;
    ASSERT_EQ(bin.counts.size(), 1u);
    EXPECT_EQ(bin.counts.begin()->second, 50u);
    EXPECT_EQ(bin.hom_size, 1u);
  }
}

TEST(SampleUnconditional, ConditionalFrequenciesLookUniform) {
  const auto joint = sample_unconditional(Prime(2), 2, 2, 100000, 2024, 4);
  EXPECT_EQ(joint, sample_unconditional(Prime(2), 2, 2, 100000, 2024, 1));
  EXPECT_EQ(joint.bins.size(), 16u);
  std::uint64_t total = 0;
  for (const auto& [key, bin] : joint.bins) {
    total += bin.total;
    std::vector<std::uint64_t> dense;
    for (const auto& [beta, count] : bin.counts)
      dense.push_back(count);
    dense.resize(bin.hom_size, 0);
    EXPECT_GT(chi_square_sf(chi_square_uniform(dense), bin.hom_size - 1), 1e-3) << to_literal(bin.psi);
  }
  EXPECT_EQ(total, 100000u);
}
