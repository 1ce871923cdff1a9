#include <gtest/gtest.h>

#include "bockstein/verification.hpp"

using namespace bockstein;

TEST(Verification, CokerIsomorphismExhaustive) {
  for (std::uint64_t p : {2, 3})
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t n = 1; n <= 2; ++n) {
        const auto r = check_coker_isomorphism(p, m, n);
        EXPECT_TRUE(r.passed) << r.name;
      }
}

TEST(Verification, CosetSizes) {
  EXPECT_TRUE(check_coset_sizes({{2, 1, 1}, {2, 2, 2}, {3, 2, 2}, {3, 1, 2}}).passed);
}

TEST(Verification, RandomPsiHasRequestedRank) {
  auto rng = SplitMix64::stream(3, 3);
  for (std::size_t r = 0; r <= 3; ++r)
    EXPECT_EQ(rank(random_psi_of_rank(rng, Prime(5), 3, 4, r)), r);
  EXPECT_THROW(random_psi_of_rank(rng, Prime(5), 2, 4, 3), std::invalid_argument);
}

TEST(Verification, UniformityCasesHaveRanksThreeTwoOne) {
  const auto cases = uniformity_cases();
  ASSERT_EQ(cases.size(), 3u);
  EXPECT_EQ(rank(cases[0].psi), 3u);
  EXPECT_EQ(rank(cases[1].psi), 2u);
  EXPECT_EQ(rank(cases[2].psi), 1u);
}

// A broken frame must be caught: flipping one census count fails the fiber check.
TEST(Verification, CensusFailureIsReported) {
  auto census = exhaustive_census(GammaContext(MatrixModP(Prime(2), {{1, 0}, {0, 0}})));
  ASSERT_TRUE(census.passed());
  census.counts.begin()->second += 1;
  EXPECT_FALSE(census.fibers_match());
  EXPECT_FALSE(census.passed());
}

TEST(Verification, CheckResultFailRecordsLine) {
  CheckResult r{"x"};
  r.fail("because");
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.lines.back(), "FAIL because");
}
