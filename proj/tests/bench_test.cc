// Copyright 2026 The rrsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rrsched/bench.h"

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "rrsched/io.h"

namespace rrsched {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Times = std::map<std::string, std::vector<std::optional<double>>>;

TEST(Pcg32Test, ReferenceVector) {
  Pcg32 rng(42, 54);
  for (std::uint32_t expected : {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u,
                                 0x83d2f293u, 0xbfa4784bu, 0xcbed606eu}) {
    EXPECT_EQ(rng.Next(), expected);
  }
}

TEST(Pcg32Test, UniformCoversTheRange) {
  Pcg32 rng(1, 2);
  std::vector<int> seen(7, 0);
  for (int t = 0; t < 7000; ++t) {
    const std::uint32_t v = rng.Uniform(3, 9);
    ASSERT_GE(v, 3u);
    ASSERT_LE(v, 9u);
    ++seen[v - 3];
  }
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(GenerateTest, DeterministicAndInRange) {
  const std::vector<Instance> a = GenerateInstances(7, 10, 5);
  const std::vector<Instance> b = GenerateInstances(7, 10, 5);
  ASSERT_EQ(a.size(), 5u);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(a[k].nominal(), b[k].nominal());
    EXPECT_EQ(a[k].deviation(), b[k].deviation());
    for (const auto* v : {&a[k].nominal(), &a[k].deviation()}) {
      for (double x : *v) {
        EXPECT_EQ(x, std::round(x));
        EXPECT_GE(x, 1);
        EXPECT_LE(x, 100);
      }
    }
  }
  EXPECT_EQ(a[0].id(), "n10_s7_1");
  EXPECT_NE(a[0].nominal(), a[1].nominal());
  // A prefix of a longer run is the shorter run.
  EXPECT_EQ(GenerateInstances(7, 10, 8)[4].nominal(), a[4].nominal());
}

TEST(GenerateTest, MeanOfManyDraws) {
  double sum = 0;
  int count = 0;
  for (const Instance& inst : GenerateInstances(2026, 100, 100)) {
    for (double v : inst.nominal()) {
      sum += v;
      ++count;
    }
  }
  EXPECT_EQ(count, 10000);
  EXPECT_GE(sum / count, 48.0);
  EXPECT_LE(sum / count, 53.0);
}

TEST(GapTest, Definitions) {
  EXPECT_NEAR(LbGap(90, 100), 10.0, 1e-12);
  EXPECT_NEAR(UbGap(110, 100), 10.0, 1e-12);
  EXPECT_NEAR(UbGap(-90, -100), 10.0, 1e-12);
  EXPECT_EQ(LbGap(100, 100), 0.0);
  EXPECT_TRUE(std::isnan(LbGap(1, 0)));
  EXPECT_TRUE(std::isnan(UbGap(1, kInfinity)));
}

TEST(ProfileTest, MicroCases) {
  std::vector<ProfilePoint> p = PerformanceProfile(
      Times{{"A", {1.0, 2.0}}, {"B", {2.0, 2.0}}});
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].model, "A");
  EXPECT_EQ(p[0].tau, 1.0);
  EXPECT_EQ(p[0].rho, 1.0);
  EXPECT_EQ(p[1].model, "B");
  EXPECT_EQ(p[1].rho, 0.5);
  EXPECT_EQ(p[3].model, "B");
  EXPECT_EQ(p[3].tau, 2.0);
  EXPECT_EQ(p[3].rho, 1.0);

  p = PerformanceProfile(Times{{"only", {3.0, 0.5, 7.0}}});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].tau, 1.0);
  EXPECT_EQ(p[0].rho, 1.0);

  p = PerformanceProfile(Times{{"A", {1.0, std::nullopt}}, {"B", {1.0, 1.0}}});
  for (const ProfilePoint& pt : p) {
    if (pt.model == "A") {
      EXPECT_EQ(pt.rho, pt.tau < 2.0 ? 0.5 : 1.0);
    }
  }
  EXPECT_EQ(p.back().tau, 2.0);
}

TEST(ProfileTest, MonotoneAndBounded) {
  Pcg32 rng(5, 6);
  Times times;
  for (const char* m : {"a", "b", "c"}) {
    for (int i = 0; i < 30; ++i) {
      const std::uint32_t r = rng.Uniform(0, 20);
      times[m].push_back(r == 0 ? std::nullopt
                                : std::optional<double>(r / 4.0));
    }
  }
  std::map<std::string, double> last;
  for (const ProfilePoint& p : PerformanceProfile(times)) {
    EXPECT_GE(p.rho, last[p.model]);
    EXPECT_GE(p.tau, 1.0);
    EXPECT_LE(p.rho, 1.0);
    last[p.model] = p.rho;
  }
}

ResultRecord Record(std::string instance, std::string model, bool ws,
                    std::string status, double time, double ub, double lb) {
  ResultRecord r;
  r.instance = std::move(instance);
  r.model = std::move(model);
  r.warm_start = ws;
  r.n = 10;
  r.gamma = 3;
  r.delta = 1;
  r.status = std::move(status);
  r.time_s = time;
  r.ub = ub;
  r.lb = lb;
  return r;
}

TEST(ProfileTest, FromRecords) {
  std::vector<ResultRecord> records = {
      Record("i1", "matching", false, "OPTIMAL", 1, 5, 5),
      Record("i1", "matching", true, "OPTIMAL", 2, 5, 5),
      Record("i1", "sorting", false, kStatusHeuristic, 0.1, 6, kNaN),
      Record("i2", "matching", false, "TIME_LIMIT", 9, 8, 4),
      Record("i2", "matching", true, "OPTIMAL", 3, 7, 7)};
  const std::vector<ProfilePoint> p = PerformanceProfile(records);
  ASSERT_FALSE(p.empty());
  for (const ProfilePoint& pt : p) {
    EXPECT_TRUE(pt.model == "matching" || pt.model == "matching+ws");
  }
  records.pop_back();
  EXPECT_THROW(PerformanceProfile(records), std::invalid_argument);
  records.push_back(Record("i1", "matching", true, "OPTIMAL", 2, 5, 5));
  EXPECT_THROW(PerformanceProfile(records), std::invalid_argument);
}

TEST(RecordsTest, BestKnownAndGaps) {
  std::vector<ResultRecord> records = {
      Record("i1", "matching", false, "TIME_LIMIT", 9, 110, 80),
      Record("i1", "minmax", false, kStatusHeuristic, 1, 100, kNaN),
      Record("i1", "assignment", false, kStatusError, 0, kNaN, kNaN)};
  AssignBestKnown(records);
  for (const ResultRecord& r : records) EXPECT_EQ(r.best_known, 100);
  EXPECT_NEAR(records[0].lbgap_pct, 20.0, 1e-12);
  EXPECT_NEAR(records[0].ubgap_pct, 10.0, 1e-12);
  EXPECT_TRUE(records[2].failed());
}

TEST(RecordsTest, CsvRoundTrip) {
  std::vector<ResultRecord> records = {
      Record("n5_s1_1", "general(K=2)", true, "OPTIMAL", 0.1234567890123,
             1.0 / 3.0, -kInfinity),
      Record("n5_s1_2", "maxmin", false, kStatusHeuristic, 2, kInfinity, kNaN)};
  records[0].lbgap_pct = kNaN;
  std::ostringstream os;
  WriteRecordsCsv(os, records);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "instance,model,warm_start,n,gamma,delta,status,time_s,ub,lb,"
            "lbgap_pct,ubgap_pct,best_known");
  std::istringstream is(os.str());
  const std::vector<ResultRecord> back = ReadRecordsCsv(is);
  ASSERT_EQ(back.size(), records.size());
  std::ostringstream again;
  WriteRecordsCsv(again, back);
  EXPECT_EQ(again.str(), os.str());
  EXPECT_EQ(back[0].ub, 1.0 / 3.0);
  EXPECT_EQ(back[0].lb, -kInfinity);
  EXPECT_TRUE(std::isnan(back[0].lbgap_pct));
  EXPECT_TRUE(back[0].warm_start);

  std::istringstream bad("instance,model\nx,y\n");
  EXPECT_THROW(ReadRecordsCsv(bad), FormatError);
}

TEST(SummaryTest, AveragesAndDashes) {
  std::vector<ResultRecord> records = {
      Record("i1", "matching", false, "OPTIMAL", 2, 10, 10),
      Record("i2", "matching", false, "OPTIMAL", 4, 20, 20),
      Record("i1", "assignment", false, "OPTIMAL", 1, 10, 10),
      Record("i2", "assignment", false, "TIME_LIMIT", 600, 22, 18),
      Record("i1", "sorting", false, kStatusHeuristic, 0, 12, kNaN)};
  AssignBestKnown(records);
  const std::vector<SummaryRow> rows = Summarize(records, GroupBy::kGamma);
  ASSERT_EQ(rows.size(), 2u);
  const SummaryRow& a = rows[0].model == "assignment" ? rows[0] : rows[1];
  const SummaryRow& m = rows[0].model == "matching" ? rows[0] : rows[1];
  EXPECT_EQ(m.solved, 2);
  EXPECT_EQ(m.time, 3.0);
  EXPECT_TRUE(std::isnan(m.lbgap));
  EXPECT_EQ(m.avg_best, 15.0);
  EXPECT_EQ(a.solved, 1);
  EXPECT_EQ(a.time, 1.0);
  EXPECT_NEAR(a.lbgap, 10.0, 1e-12);
  EXPECT_NEAR(a.ubgap, 10.0, 1e-12);

  std::ostringstream md;
  WriteSummary(md, rows, GroupBy::kGamma, OutputFormat::kMarkdown);
  for (const char* col : {"time", "LBgap", "UBgap", "#solv"}) {
    EXPECT_NE(md.str().find(col), std::string::npos);
  }
  EXPECT_NE(md.str().find("| - | - |"), std::string::npos);
}

TEST(ConfigTest, Validation) {
  ExperimentConfig config;
  config.models = {{ModelKind::Matching(), false}};
  EXPECT_NO_THROW(ValidateConfig(config));
  config.gammas.clear();
  EXPECT_THROW(ValidateConfig(config), std::invalid_argument);
  config.gammas = {1};
  config.instances_per_cell = 0;
  EXPECT_THROW(ValidateConfig(config), std::invalid_argument);
  EXPECT_EQ(ParseOutputFormat("md"), OutputFormat::kMarkdown);
  EXPECT_FALSE(ParseOutputFormat("xml").has_value());
}

TEST(ExperimentTest, TinySweepAgrees) {
  ExperimentConfig config;
  config.seed = 3;
  config.sizes = {2, 3};
  config.gammas = {1};
  config.deltas = {0, 1};
  config.instances_per_cell = 1;
  config.models = {{ModelKind::General(2), false},
                   {ModelKind::Matching(), false},
                   {ModelKind::Assignment(), true}};
  int progress = 0;
  const std::vector<ResultRecord> records =
      RunExperiment(config, [&](const ResultRecord&) { ++progress; });
  // 2 sizes x 2 deltas x (3 models + 3 heuristics).
  ASSERT_EQ(records.size(), 24u);
  EXPECT_EQ(progress, 24);
  std::map<std::string, double> exact;
  for (const ResultRecord& r : records) {
    EXPECT_FALSE(r.failed()) << r.message;
    EXPECT_LE(r.best_known, r.ub + 1e-9);
    if (r.status == kStatusHeuristic) continue;
    ASSERT_TRUE(r.solved());
    EXPECT_LE(r.lb, r.best_known + 1e-6);
    const std::string key = r.instance + "/" + std::to_string(r.delta);
    if (exact.count(key)) {
      EXPECT_NEAR(r.ub, exact[key], 1e-6 * (1 + std::abs(r.ub)));
    } else {
      exact[key] = r.ub;
    }
  }
}

}  // namespace
}  // namespace rrsched
