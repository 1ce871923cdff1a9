#include <gtest/gtest.h>

#include <sstream>

#include "bockstein/report_io.hpp"
#include "bockstein/verification.hpp"

using namespace bockstein;

TEST(NestedMatrix, EmptyShapesSurviveWithExplicitWidth) {
  const MatrixModP wide(Prime(3), 0, 4);
  EXPECT_EQ(from_nested<Ring::ModP>(to_nested(wide), Prime(3), 4), wide);
  EXPECT_THROW(from_nested<Ring::ModP>(json::parse("[[1,2],[3]]"), Prime(5), 2), std::invalid_argument);
}

TEST(Literal, RowsAndEntries) {
  EXPECT_EQ(to_literal(MatrixModP(Prime(5), {{1, 2}, {3, 4}})), "1,2;3,4");
  EXPECT_EQ(to_literal(MatrixModP(Prime(5), 0, 0)), "");
}

// Every report type re-parses from its JSON (including through text) to an equal value.
TEST(JsonRoundTrip, RandomReports) {
  for (std::uint64_t t = 0; t < 60; ++t) {
    auto rng = SplitMix64::stream(555, t);
    const Prime p(std::vector<std::uint64_t>{2, 3, 5}[rng.below(3)]);
    const auto m = rng.below(3), n = rng.below(3);
    const auto psi = random_matrix(rng, p, m, n);
    const GammaContext ctx(psi);

    const auto count = count_report(p, m, n, ctx.kernel_dim());
    ASSERT_EQ(count_report_from_json(json::parse(to_json(count).dump())), count);

    const auto census = exhaustive_census(ctx);
    ASSERT_EQ(fiber_census_from_json(json::parse(to_json(census).dump())), census);

    const auto sample = sample_conditional(ctx, 1 + rng.below(300), rng());
    ASSERT_EQ(sample_report_from_json(json::parse(to_json(sample).dump())), sample);

    const auto joint = sample_unconditional(p, m, n, 1 + rng.below(200), rng());
    ASSERT_EQ(joint_report_from_json(json::parse(to_json(joint).dump())), joint);
  }
  const auto exhaustive = joint_exhaustive(Prime(2), 1, 2);
  EXPECT_EQ(joint_report_from_json(json::parse(to_json(exhaustive).dump())), exhaustive);
}

TEST(JsonSchema, CensusFieldNames) {
  const auto j = to_json(exhaustive_census(GammaContext(MatrixModP(Prime(2), {{1, 0}, {0, 0}}))));
  for (const char* key : {"psi", "counts", "total", "k", "c", "expected_fiber_size", "expected_hom_size", "pass"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["counts"][0]["count"], 8);
  EXPECT_EQ(j["counts"][0]["beta"], json::parse("[[0]]"));
  EXPECT_EQ(j["pass"], true);
}

TEST(JsonSchema, CountReportBigIntegersAreStrings) {
  const auto j = to_json(count_report(Prime(3), 3, 2, 1));
  EXPECT_EQ(j["size_L_psi"], "729");
  EXPECT_EQ(j["hom_size"], "9");
  EXPECT_EQ(j["fiber_size"], "81");
  EXPECT_EQ(j["theorem_probability"], "1/9");
}

TEST(Csv, OneRowPerBeta) {
  const auto census = exhaustive_census(GammaContext(MatrixModP(Prime(2), 1, 2)));
  std::ostringstream os;
  write_counts_csv(os, census.counts);
  EXPECT_EQ(os.str(), "beta,count\n\"0,0\",1\n\"0,1\",1\n\"1,0\",1\n\"1,1\",1\n");
}

TEST(ComputeReport, CarriesFrame) {
  const MatrixModP2 phi(Prime(2), {{1, 0}, {0, 2}});
  const GammaContext ctx(reduce_mod_p(phi));
  const auto j = bockstein_report(ctx, phi, bockstein_of(ctx, phi));
  EXPECT_EQ(j["beta"], json::parse("[[1]]"));
  EXPECT_EQ(j["kernel_basis"], json::parse("[[0,1]]"));
  EXPECT_EQ(j["coker_rows"], json::parse("[1]"));
  EXPECT_EQ(j["serialization"], "02000000010000000100000001000000");
}
