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


#include "rrsched/heuristics.h"

#include <chrono>
#include <stdexcept>
#include <vector>

#include "rrsched/lp.h"
#include "rrsched/models.h"
#include "rrsched/subproblems.h"

namespace rrsched {

const char* ToString(HeuristicMethod method) {
  switch (method) {
    case HeuristicMethod::kSorting:
      return "sorting";
    case HeuristicMethod::kMaxMin:
      return "maxmin";
    case HeuristicMethod::kMinMax:
      return "minmax";
  }
  return "?";
}

std::optional<HeuristicMethod> ParseHeuristicMethod(std::string_view name) {
  if (name == "sorting") return HeuristicMethod::kSorting;
  if (name == "maxmin") return HeuristicMethod::kMaxMin;
  if (name == "minmax") return HeuristicMethod::kMinMax;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

HeuristicResult Finish(Schedule s, const Polyhedron& u, int delta,
                       HeuristicMethod method, Clock::time_point start,
                       double inner) {
  HeuristicResult r;
  r.value = AdversarialValue(s, u, delta).value;
  r.schedule = std::move(s);
  r.method = method;
  r.inner_value = inner;
  r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

HeuristicResult SortingHeuristic(const Instance& inst, const Polyhedron& u,
                                 int delta) {
  const Clock::time_point start = Clock::now();
  if (inst.size() != u.dim()) {
    throw std::invalid_argument("instance and scenario set differ in size");
  }
  return Finish(SptSchedule(inst.WorstCase()), u, delta,
                HeuristicMethod::kSorting, start, 0.0);
}

HeuristicResult SortingHeuristic(const Polyhedron& u, int delta) {
  const Clock::time_point start = Clock::now();
  const CompactnessReport report = ValidateCompact(u);
  if (!report.ok()) throw std::runtime_error("scenario set is not compact");
  return Finish(SptSchedule(report.upper), u, delta,
                HeuristicMethod::kSorting, start, 0.0);
}

HeuristicResult MaxMinHeuristic(const Polyhedron& u, int delta) {
  const Clock::time_point start = Clock::now();
  const int n = u.dim();
  LinearProgram lp(Sense::kMaximize);
  std::vector<int> p(n), a(n), b(n);
  for (int i = 0; i < n; ++i) p[i] = lp.AddVariable(0.0, kInfinity, 0.0);
  for (int j = 0; j < n; ++j) a[j] = lp.AddVariable(-kInfinity, kInfinity, 1.0);
  for (int i = 0; i < n; ++i) b[i] = lp.AddVariable(-kInfinity, kInfinity, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.AddRow({{a[j], 1.0}, {b[i], 1.0}, {p[i], -static_cast<double>(n - j)}},
                Relation::kLessEqual, 0.0);
    }
  }
  for (const Halfspace& h : u.rows()) {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      if (h.a[i] != 0.0) terms.push_back({p[i], h.a[i]});
    }
    lp.AddRow(std::move(terms), Relation::kLessEqual, h.b);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("max-min LP is ") +
                             ToString(sol.status));
  }
  Scenario worst(n);
  for (int i = 0; i < n; ++i) worst[i] = sol.x[p[i]];
  return Finish(SptSchedule(worst), u, delta, HeuristicMethod::kMaxMin,
                start, sol.objective);
}

HeuristicResult MinMaxHeuristic(const Polyhedron& u, int delta,
                                const SolveConfig& config) {
  const Clock::time_point start = Clock::now();
  RecoverableConfig rc;
  rc.milp = config;
  const RecoverableSolution sol =
      SolveRecoverable(ModelKind::Assignment(), u, 0, rc);
  if (!sol.first_stage) {
    throw std::runtime_error(std::string("min-max model ended ") +
                             ToString(sol.status) + " without a schedule");
  }
  return Finish(*sol.first_stage, u, delta, HeuristicMethod::kMinMax, start,
                sol.value);
}

}  // namespace rrsched
