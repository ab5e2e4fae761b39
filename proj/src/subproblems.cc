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

#include "rrsched/subproblems.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rrsched/lp.h"

namespace rrsched {

namespace {

void CheckInputs(const Schedule& x, std::span<const double> p, int delta) {
  if (static_cast<int>(p.size()) != x.size()) {
    throw std::invalid_argument("scenario and schedule sizes differ");
  }
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
}

bool IsIntegral(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double t) {
    return std::abs(t - std::round(t)) <= kIntegralityTol;
  });
}

// Size of the lexicographic tie-breaking perturbation.
double PerturbationScale(double magnitude) {
  return 1e-9 * (1.0 + magnitude);
}

IncrementalResult Finish(const Schedule& x, std::span<const double> p,
                         std::vector<JobPair> pairs, bool perturbed) {
  RecoveryMatching m(std::move(pairs));
  Schedule y = ApplySwaps(x, m);
  const double value = ScheduleCost(y, p);
  return {value, std::move(m), std::move(y), perturbed};
}

}  // namespace

double SwapGain(int i, int j, std::span<const double> p, const Schedule& x) {
  if (i == j) throw std::invalid_argument("swap of a job with itself");
  return (p[i - 1] - p[j - 1]) * (x.position_of(j) - x.position_of(i));
}

IncrementalResult IncrementalMatching(const Schedule& x,
                                      std::span<const double> p, int delta) {
  CheckInputs(x, p, delta);
  const int n = x.size();
  std::vector<JobPair> edges;
  std::vector<double> gain;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      edges.push_back({i, j});
      gain.push_back(SwapGain(i, j, p, x));
    }
  }
  const int m = static_cast<int>(edges.size());
  if (m == 0 || delta == 0) return Finish(x, p, {}, false);

  LinearProgram lp(Sense::kMinimize);
  for (int e = 0; e < m; ++e) {
    lp.AddVariable(0.0, 1.0, -gain[e],
                   "z[" + std::to_string(edges[e].first) + "][" +
                       std::to_string(edges[e].second) + "]");
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<Term> terms;
    for (int e = 0; e < m; ++e) {
      if (edges[e].first == k || edges[e].second == k) terms.push_back({e, 1.0});
    }
    lp.AddRow(std::move(terms), Relation::kLessEqual, 1.0);
  }
  std::vector<Term> all;
  for (int e = 0; e < m; ++e) all.push_back({e, 1.0});
  lp.AddRow(std::move(all), Relation::kLessEqual, delta);

  LpSolution sol = SolveLp(lp);
  bool perturbed = false;
  if (!IsIntegral(sol.x)) {
    perturbed = true;
    double scale = 0.0;
    for (double g : gain) scale = std::max(scale, std::abs(g));
    const double eps = PerturbationScale(scale);
    for (int e = 0; e < m; ++e) {
      lp.SetCost(e, -gain[e] + eps * (1.0 + static_cast<double>(e) / m));
    }
    sol = SolveLp(lp);
    if (!IsIntegral(sol.x)) {
      throw IntegralityViolation(
          "matching LP returned a fractional vertex after perturbation");
    }
  }
  std::vector<JobPair> pairs;
  for (int e = 0; e < m; ++e) {
    if (sol.x[e] > 0.5) pairs.push_back(edges[e]);
  }
  return Finish(x, p, std::move(pairs), perturbed);
}

IncrementalResult IncrementalAssignment(const Schedule& x,
                                        std::span<const double> p, int delta) {
  CheckInputs(x, p, delta);
  const int n = x.size();
  auto var = [n](int i, int j) { return (i - 1) * n + (j - 1); };

  LinearProgram lp(Sense::kMinimize);
  std::vector<double> cost(n * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      cost[var(i, j)] = p[i - 1] * (n + 1 - x.position_of(j));
      lp.AddVariable(0.0, 1.0, cost[var(i, j)],
                     "y[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<Term> row, col;
    for (int j = 1; j <= n; ++j) {
      row.push_back({var(i, j), 1.0});
      col.push_back({var(j, i), 1.0});
    }
    lp.AddRow(std::move(row), Relation::kEqual, 1.0);
    lp.AddRow(std::move(col), Relation::kEqual, 1.0);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      lp.AddRow({{var(i, j), 1.0}, {var(j, i), -1.0}}, Relation::kEqual, 0.0);
    }
  }
  std::vector<Term> trace;
  for (int i = 1; i <= n; ++i) trace.push_back({var(i, i), 1.0});
  lp.AddRow(std::move(trace), Relation::kGreaterEqual, n - 2.0 * delta);

  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("assignment LP is ") +
                             ToString(sol.status));
  }
  bool perturbed = false;
  if (!IsIntegral(sol.x)) {
    perturbed = true;
    double scale = 0.0;
    for (double c : cost) scale = std::max(scale, std::abs(c));
    const double eps = PerturbationScale(scale);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const int v = var(i, j);
        lp.SetCost(v, cost[v] + eps * (1.0 + static_cast<double>(v) / (n * n)));
      }
    }
    sol = SolveLp(lp);
    if (!IsIntegral(sol.x)) {
      throw IntegralityViolation(
          "assignment LP returned a fractional vertex after perturbation");
    }
  }
  std::vector<JobPair> pairs;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (sol.x[var(i, j)] > 0.5) pairs.push_back({i, j});
    }
  }
  return Finish(x, p, std::move(pairs), perturbed);
}

AdversarialResult AdversarialValue(const Schedule& x, const Polyhedron& u,
                                   int delta) {
  if (u.dim() != x.size()) {
    throw std::invalid_argument("scenario set and schedule sizes differ");
  }
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  const int n = x.size();

  LinearProgram lp(Sense::kMaximize);
  for (int i = 1; i <= n; ++i) {
    lp.AddVariable(0.0, kInfinity, n + 1 - x.position_of(i),
                   "p[" + std::to_string(i) + "]");
  }
  for (int i = 1; i <= n; ++i) {
    lp.AddVariable(0.0, kInfinity, -1.0, "alpha[" + std::to_string(i) + "]");
  }
  const int gamma = lp.AddVariable(0.0, kInfinity, -delta, "gamma");
  auto alpha = [n](int i) { return n + i - 1; };

  // alpha_i + alpha_j + gamma >= (p_i - p_j)(pos(j) - pos(i)).
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double d = x.position_of(j) - x.position_of(i);
      lp.AddRow({{alpha(i), 1.0},
                 {alpha(j), 1.0},
                 {gamma, 1.0},
                 {i - 1, -d},
                 {j - 1, d}},
                Relation::kGreaterEqual, 0.0);
    }
  }
  for (const Halfspace& h : u.rows()) {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      if (h.a[i] != 0.0) terms.push_back({i, h.a[i]});
    }
    lp.AddRow(std::move(terms), Relation::kLessEqual, h.b);
  }

  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("adversarial LP is ") +
                             ToString(sol.status) +
                             (sol.status == LpStatus::kInfeasible
                                  ? " (empty scenario set)"
                                  : " (scenario set not bounded)"));
  }
  return {sol.objective, Scenario(sol.x.begin(), sol.x.begin() + n)};
}

}  // namespace rrsched
