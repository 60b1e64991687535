#include <gtest/gtest.h>

#include <sstream>

#include "cbp/acceptance.hpp"
#include "cbp/harness.hpp"
#include "cbp/instance_io.hpp"

namespace cbp {
namespace {

TEST(RandomInstance, SeededAndWithinSpec) {
  const RandomInstanceSpec spec{3, 9, 5, SizeMode::mixed, 7};
  std::mt19937_64 a(99), b(99);
  for (int t = 0; t < 50; ++t) {
    const Instance x = random_instance(spec, a);
    ASSERT_EQ(x, random_instance(spec, b));
    ASSERT_GE(x.size(), 3u);
    ASSERT_LE(x.size(), 9u);
    for (const auto& item : x.items()) {
      ASSERT_LE(item.size.value().get_den(), 7);
      ASSERT_LE(x.colors().size(), 5u);
    }
  }
  EXPECT_THROW(random_instance({5, 4, 2, SizeMode::zero, 1}, a), std::invalid_argument);
}

TEST(Measure, OracleDenominator) {
  std::mt19937_64 rng(1);
  const Instance instance = random_instance({5, 10, 3, SizeMode::rational, 6}, rng);
  const auto r = measure("x", "bap", instance, DenominatorKind::oracle, TieBreak::min_index, {});
  EXPECT_EQ(r.denominator.kind, DenominatorKind::oracle);
  EXPECT_EQ(r.ratio, ratio(r.bins_alg, r.denominator.value));
  EXPECT_GE(r.ratio, 1);
}

TEST(Measure, FallsBackToLabeledBounds) {
  std::mt19937_64 rng(2);
  const Instance instance = random_instance({30, 30, 3, SizeMode::rational, 6}, rng);
  const auto r = measure("big", "ff", instance, DenominatorKind::oracle, TieBreak::min_index, {});
  EXPECT_EQ(r.denominator.kind, DenominatorKind::bounds);
  EXPECT_NE(r.denominator.note.find("oracle fallback"), std::string::npos);
  EXPECT_STREQ(ratio_relation(r.denominator.kind), "<=");
}

TEST(Measure, CertificateRatioOnZeroCascade) {
  const auto g = gen_bap_zero(4);
  const auto r = measure(g.family, "bap", g.instance, DenominatorKind::certificate, TieBreak::min_index, {}, g);
  EXPECT_EQ(r.bins_alg, 1724u);
  EXPECT_EQ(r.denominator.value, 1024u);
  EXPECT_EQ(r.ratio, Rational(431, 256));
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.checks[0].passed);
  EXPECT_THROW(measure("x", "bap", g.instance, DenominatorKind::certificate, TieBreak::min_index, {}),
               std::invalid_argument);
}

RatioReport random_ratio_report(std::string_view alg, const RandomInstanceSpec& spec, int count) {
  RatioReport report;
  report.spec.algorithms = {std::string(alg)};
  report.spec.source = "random";
  report.spec.source_params = to_json(spec);
  report.spec.seed = 5;
  std::mt19937_64 rng(report.spec.seed);
  for (int t = 0; t < count; ++t) {
    report.runs.push_back(measure("r" + std::to_string(t), alg, random_instance(spec, rng), DenominatorKind::oracle,
                                  TieBreak::min_color, {}));
  }
  return report;
}

TEST(RatioReport, BapWithinFourAgainstOracle) {
  const auto report = random_ratio_report("bap", {1, 14, 3, SizeMode::rational, 8}, 200);
  const auto aggregates = report.aggregates();
  ASSERT_EQ(aggregates.size(), 1u);
  EXPECT_EQ(aggregates[0].kind, DenominatorKind::oracle);
  EXPECT_EQ(aggregates[0].runs, 200u);
  EXPECT_LE(aggregates[0].max_ratio, 4);
}

TEST(RatioReport, PseudoExactOnTwoColorZeroSize) {
  const auto report = random_ratio_report("pseudo", {1, 40, 2, SizeMode::zero, 1}, 200);
  const auto aggregates = report.aggregates();
  ASSERT_EQ(aggregates.size(), 1u);
  EXPECT_EQ(aggregates[0].max_ratio, 1);
  EXPECT_EQ(aggregates[0].mean_ratio, 1);
}

TEST(RatioReport, JsonRoundTripRederivesRatios) {
  const auto report = random_ratio_report("ff", {1, 12, 3, SizeMode::mixed, 6}, 20);
  const auto parsed = nlohmann::json::parse(to_json(report).dump());
  EXPECT_EQ(parsed["version"], kVersion);
  EXPECT_EQ(parsed["spec"]["tiebreak"], "min-color");
  EXPECT_EQ(parsed["spec"]["seed"], 5);
  ASSERT_EQ(parsed["runs"].size(), report.runs.size());
  for (const auto& run : parsed["runs"]) {
    const Rational expected = ratio(run["bins_alg"].get<long>(), run["denominator"]["value"].get<long>());
    EXPECT_EQ(parse_rational(run["ratio"].get<std::string>()), expected);
  }
  Rational max = 0;
  for (const auto& r : report.runs) max = std::max(max, r.ratio);
  EXPECT_EQ(parse_rational(parsed["aggregates"][0]["max_ratio"].get<std::string>()), max);
}

TEST(RatioReport, CsvRoundTripRederivesRatios) {
  const auto report = random_ratio_report("wf", {1, 12, 3, SizeMode::mixed, 6}, 20);
  std::istringstream in(to_csv(report));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# version=" + std::string(kVersion), 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("label,algorithm,items,bins_alg", 0), 0u);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) fields.push_back(cell);
    ASSERT_EQ(fields.size(), 10u);
    EXPECT_EQ(parse_rational(fields[7]), ratio(std::stol(fields[3]), std::stol(fields[5])));
    ++rows;
  }
  EXPECT_EQ(rows, report.runs.size());
}

TEST(Transcript, JsonCarriesRequiredFields) {
  auto algorithm = make_algorithm("bap");
  const auto t = adversary_lb2(*algorithm, 5);
  const auto j = to_json(t);
  for (const char* key : {"instance", "bins_alg", "opt_upper_bound", "ratio_lower_bound", "lemma_checks"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["instance"].size(), t.instance.size());
  EXPECT_EQ(parse_rational(j["ratio_lower_bound"].get<std::string>()), t.ratio_lower_bound());
}

TEST(Suite, FormatsOneLinePerCriterion) {
  AcceptanceSuite suite;
  const auto r = suite.run(4);
  EXPECT_EQ(r.status, CriterionStatus::pass) << r.detail;
  const auto line = format_result_line(r);
  EXPECT_EQ(line.rfind("[PASS] criterion  4", 0), 0u);
  EXPECT_THROW(suite.run(0), std::out_of_range);
  EXPECT_THROW(suite.run(12), std::out_of_range);
}

TEST(Suite, InvertedTieBreakBreaksOnlyTheTraceCriterion) {
  SuiteOptions options;
  options.bap_tie_break = TieBreak::max_index;
  AcceptanceSuite suite(options);
  const auto trace = suite.run(5);
  EXPECT_EQ(trace.status, CriterionStatus::fail);
  EXPECT_NE(trace.detail.find("bap-3color trace"), std::string::npos);
  EXPECT_EQ(suite.run(2).status, CriterionStatus::pass);
  EXPECT_EQ(suite.run(3).status, CriterionStatus::pass);
  EXPECT_EQ(suite.run(4).status, CriterionStatus::pass);
}

TEST(Suite, ExhaustedBudgetSkipsInsteadOfFailing) {
  SuiteOptions options;
  options.oracle_budget = std::chrono::milliseconds(0);
  AcceptanceSuite suite(options);
  for (int id : {3, 10, 11}) {
    const auto r = suite.run(id);
    EXPECT_EQ(r.status, CriterionStatus::skipped) << id;
    EXPECT_NE(r.detail.find("time budget"), std::string::npos) << r.detail;
  }
}

}  // namespace
}  // namespace cbp
