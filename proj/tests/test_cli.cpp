#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace bockstein;
using namespace bockstein::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bockstein-cli");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  auto parsed = parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
  if (const int* code = std::get_if<int>(&parsed))
    return {*code, out.str(), err.str()};
  const int code = run(std::get<CliConfig>(parsed), out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST(ParseMatrix, Examples) {
  EXPECT_EQ(parse_matrix<Ring::ModP2>("2", Prime(2), 1, 1), MatrixModP2(Prime(2), {{2}}));
  EXPECT_EQ(parse_matrix<Ring::ModP>("1,0;0,0", Prime(2), 2, 2), MatrixModP(Prime(2), {{1, 0}, {0, 0}}));
  EXPECT_THROW(parse_matrix<Ring::ModP2>("4", Prime(2), 1, 1), UsageError);
  EXPECT_EQ(parse_matrix<Ring::ModP2>("4", Prime(2), 1, 1, true), MatrixModP2(Prime(2), {{0}}));
}

TEST(ParseMatrix, Errors) {
  EXPECT_THROW(parse_matrix<Ring::ModP>("1,0;0", Prime(2), std::nullopt, std::nullopt), UsageError);
  EXPECT_THROW(parse_matrix<Ring::ModP>("1,0", Prime(2), 2, 2), UsageError);
  EXPECT_THROW(parse_matrix<Ring::ModP>("1,x", Prime(2), std::nullopt, std::nullopt), UsageError);
  EXPECT_THROW(parse_matrix<Ring::ModP>("1,-1", Prime(3), std::nullopt, std::nullopt), UsageError);
  EXPECT_THROW(parse_matrix<Ring::ModP>("1,", Prime(3), std::nullopt, std::nullopt), UsageError);
  EXPECT_THROW(parse_matrix<Ring::ModP>("99999999999999999999999", Prime(3), 1, 1), UsageError);
}

TEST(ParseMatrix, InfersShapeAndAllowsSpaces) {
  const auto m = parse_matrix<Ring::ModP>(" 1, 2 ;0,1", Prime(3), std::nullopt, std::nullopt);
  EXPECT_EQ(m, MatrixModP(Prime(3), {{1, 2}, {0, 1}}));
  EXPECT_EQ(parse_matrix<Ring::ModP>("", Prime(3), 0, 4), MatrixModP(Prime(3), 0, 4));
}

TEST(Run, ComputeScalar) {
  const auto o = invoke({"compute", "--p", "2", "--m", "1", "--n", "1", "--phi", "2"});
  ASSERT_EQ(o.code, kPass) << o.err;
  const auto j = json::parse(o.out);
  EXPECT_EQ(j["beta"], json::parse("[[1]]"));
  EXPECT_EQ(j["k"], 1);
  EXPECT_EQ(j["c"], 1);
}

TEST(Run, ComputeFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "bockstein_phi.json";
  std::ofstream(path) << "[[1, 0], [0, 2]]";
  const auto o = invoke({"compute", "--p", "2", "--phi-file", path.string(), "--format", "csv"});
  std::filesystem::remove(path);
  ASSERT_EQ(o.code, kPass) << o.err;
  EXPECT_EQ(o.out, "k,c,beta\n1,1,\"1\"\n");
}

TEST(Run, CountProbability) {
  const auto o = invoke({"count", "--p", "3", "--m", "3", "--n", "2", "--k", "1"});
  ASSERT_EQ(o.code, kPass);
  EXPECT_EQ(json::parse(o.out)["theorem_probability"], "1/9");
  EXPECT_EQ(invoke({"count", "--p", "3", "--m", "1", "--n", "3", "--k", "1"}).code, kUsage);
}

TEST(Run, CensusPassesAndReparses) {
  const auto o = invoke({"census", "--p", "2", "--psi", "1,0;0,0"});
  ASSERT_EQ(o.code, kPass);
  const auto census = fiber_census_from_json(json::parse(o.out));
  EXPECT_EQ(census, exhaustive_census(GammaContext(MatrixModP(Prime(2), {{1, 0}, {0, 0}}))));
}

TEST(Run, SampleRecordsGeneratedSeed) {
  const auto o = invoke({"sample", "--p", "3", "--psi", "1,2;2,1", "--trials", "100"});
  ASSERT_EQ(o.code, kPass);
  const auto report = sample_report_from_json(json::parse(o.out));
  const auto again = invoke({"sample", "--p", "3", "--psi", "1,2;2,1", "--trials", "100", "--seed",
                             std::to_string(report.seed)});
  EXPECT_EQ(sample_report_from_json(json::parse(again.out)), report);
}

TEST(Run, SampleUnconditional) {
  const auto o = invoke({"sample", "--p", "2", "--m", "1", "--n", "1", "--unconditional", "--trials", "400",
                         "--seed", "9"});
  ASSERT_EQ(o.code, kPass);
  const auto joint = joint_report_from_json(json::parse(o.out));
  EXPECT_EQ(joint.bins.size(), 2u);
  EXPECT_EQ(joint.seed, 9u);
}

TEST(Run, UsageErrors) {
  EXPECT_EQ(invoke({"compute", "--p", "2", "--m", "1", "--n", "1"}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--p", "2", "--phi", "4"}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--p", "2", "--phi", "4", "--reduce"}).code, kPass);
  EXPECT_EQ(invoke({"compute", "--p", "6", "--phi", "1"}).code, kUsage);
  EXPECT_EQ(invoke({"sample", "--p", "2", "--psi", "1"}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"census", "--p", "2", "--psi", "1", "--format", "yaml"}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kPass);
}

TEST(Run, BudgetExceededStatus) {
  EXPECT_EQ(invoke({"census", "--p", "2", "--psi", "0,0,0,0,0", "--budget", "8"}).code, kBudgetExceeded);
}

TEST(Run, BudgetFromEnvironment) {
  ::setenv("BOCKSTEIN_BUDGET", "8", 1);
  EXPECT_EQ(invoke({"census", "--p", "2", "--psi", "0,0,0,0,0"}).code, kBudgetExceeded);
  ::setenv("BOCKSTEIN_BUDGET", "lots", 1);
  EXPECT_EQ(invoke({"census", "--p", "2", "--psi", "0"}).code, kUsage);
  ::unsetenv("BOCKSTEIN_BUDGET");
  EXPECT_EQ(invoke({"census", "--p", "2", "--psi", "0,0,0,0,0"}).code, kPass);
}

TEST(Run, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "bockstein_count.json";
  const auto o = invoke({"count", "--p", "2", "--m", "2", "--n", "2", "--k", "1", "-o", path.string()});
  ASSERT_EQ(o.code, kPass);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(count_report_from_json(json::parse(in)), count_report(Prime(2), 2, 2, 1));
  std::filesystem::remove(path);
}

TEST(Run, ScopedVerifyListsEveryPsiAndIsDeterministic) {
  const auto a = invoke({"verify", "--p", "2", "--max-dim", "2"});
  ASSERT_EQ(a.code, kPass) << a.out;
  const auto j = json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  const auto& fiber = j["checks"][1];
  EXPECT_EQ(fiber["lines"].size(), 26u);  // 2 + 4 + 4 + 16 psi
  for (const auto& line : fiber["lines"])
    EXPECT_EQ(line.get<std::string>().substr(0, 4), "PASS");
  EXPECT_EQ(invoke({"verify", "--p", "2", "--max-dim", "2"}).out, a.out);
}
