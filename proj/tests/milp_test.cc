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


#include "rrsched/milp.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace rrsched {
namespace {

MixedIntegerProgram TwoBinaries() {
  MixedIntegerProgram mip;
  const int a = mip.lp.AddVariable(0, 1, -1);
  const int b = mip.lp.AddVariable(0, 1, -1);
  mip.lp.AddRow({{a, 1}, {b, 1}}, Relation::kLessEqual, 1);
  mip.binaries = {a, b};
  return mip;
}

// 3x3 assignment with distinct costs c_ij = 3i + j^2.
MixedIntegerProgram Assignment3() {
  MixedIntegerProgram mip;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      mip.binaries.push_back(mip.lp.AddVariable(0, 1, (i + 1) * (j + 2) + j * j));
    }
  }
  for (int i = 0; i < 3; ++i) {
    std::vector<Term> row, col;
    for (int j = 0; j < 3; ++j) {
      row.push_back({3 * i + j, 1});
      col.push_back({3 * j + i, 1});
    }
    mip.lp.AddRow(row, Relation::kEqual, 1);
    mip.lp.AddRow(col, Relation::kEqual, 1);
  }
  return mip;
}

TEST(MilpTest, PackingExample) {
  const MilpSolution s = SolveMilp(TwoBinaries());
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.ub, -1.0, 1e-9);
  EXPECT_NEAR(s.lb, -1.0, 1e-9);
  ASSERT_TRUE(s.incumbent.has_value());
  EXPECT_NEAR((*s.incumbent)[0] + (*s.incumbent)[1], 1.0, 1e-9);
}

TEST(MilpTest, IntegralRootNeedsOneNode) {
  const MilpSolution s = SolveMilp(Assignment3());
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_EQ(s.nodes, 1);
}

TEST(MilpTest, Infeasible) {
  MixedIntegerProgram mip;
  const int a = mip.lp.AddVariable(0, 1, 0);
  mip.lp.AddRow({{a, 2}}, Relation::kEqual, 1);
  mip.binaries = {a};
  const MilpSolution s = SolveMilp(mip);
  EXPECT_EQ(s.status, MilpStatus::kInfeasible);
  EXPECT_FALSE(s.incumbent.has_value());
}

TEST(MilpTest, RejectsMalformedPrograms) {
  MixedIntegerProgram mip = TwoBinaries();
  mip.binaries.push_back(7);
  EXPECT_THROW(SolveMilp(mip), std::invalid_argument);
  mip = TwoBinaries();
  mip.lp.SetBounds(0, 0, 2);
  EXPECT_THROW(SolveMilp(mip), std::invalid_argument);
  mip = TwoBinaries();
  mip.lp.set_sense(Sense::kMaximize);
  EXPECT_THROW(SolveMilp(mip), std::invalid_argument);
  mip = TwoBinaries();
  mip.priority = {1};
  EXPECT_THROW(SolveMilp(mip), std::invalid_argument);
}

TEST(WarmStartTest, Checks) {
  const MixedIntegerProgram mip = TwoBinaries();
  EXPECT_TRUE(CheckWarmStart(mip, {1, 0}).accepted);
  const WarmStartCheck row = CheckWarmStart(mip, {1, 1});
  EXPECT_FALSE(row.accepted);
  EXPECT_EQ(row.row, 0);
  const WarmStartCheck frac = CheckWarmStart(mip, {0.5, 0});
  EXPECT_FALSE(frac.accepted);
  EXPECT_EQ(frac.row, -1);
  EXPECT_FALSE(CheckWarmStart(mip, {1}).accepted);
}

TEST(WarmStartTest, AssignmentRowViolation) {
  const MixedIntegerProgram mip = Assignment3();
  std::vector<double> x(9, 0.0);
  x[0] = x[4] = 1;  // row 3 of the permutation is empty
  const WarmStartCheck c = CheckWarmStart(mip, x);
  EXPECT_FALSE(c.accepted);
  EXPECT_GE(c.row, 0);
}

TEST(WarmStartTest, OptimalSolutionFedBack) {
  const MixedIntegerProgram mip = Assignment3();
  const MilpSolution first = SolveMilp(mip);
  SolveConfig config;
  config.warm_start = WarmStart{*first.incumbent, first.ub};
  const MilpSolution second = SolveMilp(mip, config);
  EXPECT_TRUE(second.warm_start_accepted);
  EXPECT_EQ(second.status, MilpStatus::kOptimal);
  EXPECT_NEAR(second.ub, first.ub, 1e-9);
  EXPECT_NEAR(second.lb, second.ub, 1e-9);
}

// Random knapsack-like covers solved by enumeration.
struct RandomMip {
  MixedIntegerProgram mip;
  double optimum = kInfinity;
};

RandomMip MakeRandomMip(testing::Rng& rng) {
  RandomMip r;
  const int nb = rng.Int(2, 8), nr = rng.Int(1, 4);
  std::vector<double> cost(nb);
  for (int j = 0; j < nb; ++j) {
    cost[j] = rng.Int(-10, 10);
    r.mip.binaries.push_back(r.mip.lp.AddVariable(0, 1, cost[j]));
  }
  const int y = r.mip.lp.AddVariable(0, 5, 1.5);
  std::vector<std::vector<double>> a(nr, std::vector<double>(nb));
  std::vector<double> b(nr);
  for (int i = 0; i < nr; ++i) {
    std::vector<Term> terms;
    double sum = 0;
    for (int j = 0; j < nb; ++j) {
      a[i][j] = rng.Int(0, 6);
      sum += a[i][j];
      terms.push_back({j, a[i][j]});
    }
    terms.push_back({y, -2});
    b[i] = std::floor(sum / 2);
    r.mip.lp.AddRow(terms, Relation::kLessEqual, b[i]);
  }
  for (int mask = 0; mask < (1 << nb); ++mask) {
    double need = 0, value = 0;
    for (int i = 0; i < nr; ++i) {
      double act = 0;
      for (int j = 0; j < nb; ++j) {
        if (mask >> j & 1) act += a[i][j];
      }
      need = std::max(need, (act - b[i]) / 2);
    }
    if (need > 5) continue;
    for (int j = 0; j < nb; ++j) {
      if (mask >> j & 1) value += cost[j];
    }
    r.optimum = std::min(r.optimum, value + 1.5 * need);
  }
  return r;
}

TEST(MilpTest, MatchesEnumerationOnRandomPrograms) {
  testing::Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const RandomMip r = MakeRandomMip(rng);
    const MilpSolution s = SolveMilp(r.mip);
    ASSERT_EQ(s.status, MilpStatus::kOptimal);
    EXPECT_NEAR(s.ub, r.optimum, 1e-7);
    EXPECT_LE(s.lb, r.optimum + 1e-7);
    EXPECT_TRUE(CheckWarmStart(r.mip, *s.incumbent).accepted);
    for (const IncumbentEvent& e : s.log) {
      EXPECT_LE(e.lb, r.optimum + 1e-7);
      EXPECT_GE(e.ub, r.optimum - 1e-7);
    }
  }
}

TEST(MilpTest, PriorityKeepsOptimumAndIsDeterministic) {
  testing::Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    RandomMip r = MakeRandomMip(rng);
    const int nb = static_cast<int>(r.mip.binaries.size());
    for (int j = 0; j < nb; ++j) r.mip.priority.push_back(j % 2);
    const MilpSolution a = SolveMilp(r.mip);
    const MilpSolution b = SolveMilp(r.mip);
    EXPECT_NEAR(a.ub, r.optimum, 1e-7);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(*a.incumbent, *b.incumbent);
  }
}

TEST(MilpTest, WarmStartNeverWorsens) {
  testing::Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const RandomMip r = MakeRandomMip(rng);
    const int nb = static_cast<int>(r.mip.binaries.size());
    std::vector<double> x(nb + 1, 0.0);
    x[nb] = 5;  // all-zero binaries with the slack at its bound
    SolveConfig config;
    config.warm_start = WarmStart{x, r.mip.lp.Objective(x)};
    const MilpSolution s = SolveMilp(r.mip, config);
    EXPECT_TRUE(s.warm_start_accepted);
    EXPECT_LE(s.ub, config.warm_start->objective + 1e-9);
    EXPECT_NEAR(s.ub, r.optimum, 1e-7);
  }
}

TEST(MilpTest, PrimalHeuristicIsUsed) {
  testing::Rng rng(44);
  const RandomMip r = MakeRandomMip(rng);
  int calls = 0;
  SolveConfig config;
  config.primal_heuristic = [&](const std::vector<double>& lp_x) {
    ++calls;
    std::vector<double> x = lp_x;
    for (int j : r.mip.binaries) x[j] = 0;
    x.back() = 5;
    return std::optional<std::vector<double>>(x);
  };
  const MilpSolution s = SolveMilp(r.mip, config);
  EXPECT_NEAR(s.ub, r.optimum, 1e-7);
  if (s.nodes > 1) {
    EXPECT_GT(calls, 0);
  }
}

TEST(MilpTest, SolveLogCsv) {
  const MilpSolution s = SolveMilp(TwoBinaries());
  std::ostringstream os;
  WriteSolveLog(os, s);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "time_s,nodes,lb,ub");
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  EXPECT_EQ(lines, static_cast<int>(s.log.size()));
  EXPECT_GE(lines, 1);
}

}  // namespace
}  // namespace rrsched
