// Copyright 2026 The cpabe-enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "cpabe/bench/bench.hpp"
#include "cpabe/bench/stats.hpp"
#include "cpabe/policy/satisfaction.hpp"
#include "support/errors.hpp"
#include "support/policy_oracle.hpp"

namespace cpabe::bench {
namespace {

using test_support::error_of;

TEST(StatsTest, Summary) {
  std::vector<double> odd{5, 1, 3};
  auto s = summarize(odd);
  EXPECT_DOUBLE_EQ(s.median, 3);
  EXPECT_DOUBLE_EQ(s.mean, 3);
  EXPECT_DOUBLE_EQ(s.min, 1);
  std::vector<double> even{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(summarize(even).median, 2.5);
}

TEST(StatsTest, FitLineRecoversExactLine) {
  std::vector<double> xs{1, 2, 3, 4, 5};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.5 * x + 7);
  auto fit = fit_line(xs, ys);
  EXPECT_NEAR(fit.slope, 2.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 7, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1, 1e-12);
}

TEST(StatsTest, FitLineNoisyData) {
  // Hand-computed: x = 1..4, y = 1, 3, 2, 4 -> slope 0.8, intercept 0.5,
  // SS_res = 1.8, SS_tot = 5, r^2 = 0.64.
  std::vector<double> xs{1, 2, 3, 4};
  std::vector<double> ys{1, 3, 2, 4};
  auto fit = fit_line(xs, ys);
  EXPECT_NEAR(fit.slope, 0.8, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.5, 1e-12);
  EXPECT_NEAR(fit.r_squared, 0.64, 1e-12);
}

TEST(GeneratePolicyTest, TenRulesOfFive) {
  auto p = generate_policy(10, 5);
  EXPECT_EQ(p.leaf_count(), 50u);
  EXPECT_FALSE(p.root().is_leaf());
  EXPECT_EQ(p.root().threshold(), 1u);
  EXPECT_EQ(p.root().children().size(), 10u);
  for (const auto& rule : p.root().children()) {
    EXPECT_EQ(rule.threshold(), 5u);
    EXPECT_EQ(rule.children().size(), 5u);
  }
  EXPECT_EQ(p.root().depth(), 2u);
}

TEST(GeneratePolicyTest, SingleLeaf) {
  auto p = generate_policy(1, 1);
  EXPECT_EQ(p.leaf_count(), 1u);
  EXPECT_EQ(p.text(), "r0:a0 1of1");
}

TEST(GeneratePolicyTest, OneRuleSatisfiesOthersDoNotMix) {
  auto p = generate_policy(10, 5);
  auto rule7 = rule_attributes(7, 5);
  EXPECT_EQ(rule7.size(), 5u);
  EXPECT_TRUE(policy::satisfies(p, rule7).satisfied);

  // Three attributes from one rule and two from another satisfy nothing.
  policy::AttributeSet mixed;
  mixed.emplace("r1:a0");
  mixed.emplace("r1:a1");
  mixed.emplace("r1:a2");
  mixed.emplace("r2:a3");
  mixed.emplace("r2:a4");
  EXPECT_FALSE(policy::satisfies(p, mixed).satisfied);

  std::set<std::string> names;
  for (const auto& a : mixed) names.insert(a.str());
  EXPECT_FALSE(test_support::oracle_satisfied(p.root(), names));
}

TEST(GeneratePolicyTest, RejectsZero) {
  EXPECT_EQ(error_of([] { generate_policy(0, 5); }), Errc::kInvalidArgument);
  EXPECT_EQ(error_of([] { generate_policy(5, 0); }), Errc::kInvalidArgument);
  EXPECT_EQ(error_of([] { generate_policy(100, 100); }), Errc::kLimitExceeded);
}

TEST(BenchConfigTest, Defaults) {
  auto rules = BenchConfig::defaults(Experiment::kRules);
  EXPECT_EQ(rules.sweep, (std::vector<std::uint64_t>{1, 5, 10, 15, 20}));
  EXPECT_EQ(rules.attrs_per_rule, 5u);
  EXPECT_EQ(rules.file_bytes, 500u * 1024);
  auto attrs = BenchConfig::defaults(Experiment::kAttributes);
  EXPECT_EQ(attrs.sweep, (std::vector<std::uint64_t>{2, 4, 6, 8, 10}));
  EXPECT_EQ(attrs.rules, 10u);
  auto size = BenchConfig::defaults(Experiment::kFileSize);
  EXPECT_EQ(size.sweep, (std::vector<std::uint64_t>{1, 10, 25, 50}));
}

TEST(BenchConfigTest, Validation) {
  auto c = BenchConfig::defaults(Experiment::kRules);
  EXPECT_NO_THROW(c.validate());
  auto reps = c;
  reps.repetitions = 0;
  EXPECT_EQ(error_of([&] { reps.validate(); }), Errc::kInvalidArgument);
  reps.repetitions = 2;
  EXPECT_EQ(error_of([&] { reps.validate(); }), Errc::kInvalidArgument);
  auto empty = c;
  empty.sweep.clear();
  EXPECT_EQ(error_of([&] { empty.validate(); }), Errc::kInvalidArgument);
  auto unordered = c;
  unordered.sweep = {5, 1};
  EXPECT_EQ(error_of([&] { unordered.validate(); }), Errc::kInvalidArgument);
  EXPECT_EQ(error_of([&] { run_bench(reps); }), Errc::kInvalidArgument);
}

TEST(BenchConfigTest, ParseExperiment) {
  EXPECT_EQ(parse_experiment("rules"), Experiment::kRules);
  EXPECT_EQ(parse_experiment("attrs"), Experiment::kAttributes);
  EXPECT_EQ(parse_experiment("filesize"), Experiment::kFileSize);
  EXPECT_EQ(error_of([] { parse_experiment("nope"); }), Errc::kInvalidArgument);
}

TEST(RunBenchTest, SmallRulesSweep) {
  auto c = BenchConfig::defaults(Experiment::kRules);
  c.sweep = {1, 2};
  c.attrs_per_rule = 2;
  c.file_bytes = 4096;
  c.repetitions = 3;
  auto records = run_bench(c);
  ASSERT_EQ(records.size(), 8u);  // 2 values x 2 phases x on/off
  for (const auto& r : records) {
    EXPECT_GT(r.median_ms, 0);
    EXPECT_LE(r.min_ms, r.median_ms);
    EXPECT_EQ(r.reps, 3);
    EXPECT_EQ(r.leaf_count, r.param * 2);
    if (!r.enclave) EXPECT_GT(r.kem_median_ms, 0);
  }
  auto csv = to_csv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
  EXPECT_NE(csv.find("rules,2,decrypt,on,"), std::string::npos);
}

TEST(RunBenchTest, SinglePathAndCsvFile) {
  BenchConfig c;
  c.experiment = Experiment::kAttributes;
  c.sweep = {1};
  c.rules = 2;
  c.file_bytes = 1024;
  c.repetitions = 3;
  c.enclave = EnclaveMode::kOff;
  c.output = std::filesystem::temp_directory_path() / "cpabe_bench_test.csv";
  auto records = run_bench(c);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_FALSE(records[0].enclave);
  EXPECT_TRUE(std::filesystem::exists(c.output));
  std::filesystem::remove(c.output);
  c.output = "/nonexistent-dir/x.csv";
  EXPECT_EQ(error_of([&] { run_bench(c); }), Errc::kIoError);
}

}  // namespace
}  // namespace cpabe::bench
