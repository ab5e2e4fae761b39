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

#include "rrsched/oracle.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rrsched/lp.h"

namespace rrsched {

namespace {

void CheckBudget(const OracleBudget& budget) {
  if (budget.max_n < 1 || budget.max_n > 9) {
    throw std::invalid_argument("oracle max_n must lie in [1, 9]");
  }
}

void Enumerate(std::vector<bool>& used, int from, int left,
               std::vector<JobPair>& current,
               std::vector<RecoveryMatching>& out) {
  const int n = static_cast<int>(used.size());
  int first = from;
  while (first <= n && used[first - 1]) ++first;
  if (first > n || left == 0) {
    out.emplace_back(current);
    return;
  }
  // The smallest undecided job either stays put or swaps with a later one.
  used[first - 1] = true;
  Enumerate(used, first + 1, left, current, out);
  for (int j = first + 1; j <= n; ++j) {
    if (used[j - 1]) continue;
    used[j - 1] = true;
    current.push_back({first, j});
    Enumerate(used, first + 1, left - 1, current, out);
    current.pop_back();
    used[j - 1] = false;
  }
  used[first - 1] = false;
}

}  // namespace

std::int64_t CountRecoveries(int n, int delta) {
  if (n < 0 || delta < 0) throw std::invalid_argument("negative size");
  // m[k] = number of matchings with exactly k pairs in the complete graph.
  std::int64_t total = 0;
  std::int64_t mk = 1;  // k = 0
  for (int k = 0; k <= delta && 2 * k <= n; ++k) {
    total += mk;
    // m[k+1] = m[k] * (n-2k)(n-2k-1) / (2(k+1))
    const std::int64_t a = n - 2 * k;
    mk = mk * a * (a - 1) / (2 * (k + 1));
  }
  return total;
}

std::vector<RecoveryMatching> EnumerateRecoveries(int n, int delta,
                                                  const OracleBudget& budget) {
  CheckBudget(budget);
  const std::int64_t count = CountRecoveries(n, delta);
  if (count > budget.max_recoveries) {
    throw OracleLimitError("recovery enumeration of size " +
                           std::to_string(count) + " exceeds the budget");
  }
  std::vector<RecoveryMatching> out;
  out.reserve(count);
  std::vector<bool> used(n, false);
  std::vector<JobPair> current;
  Enumerate(used, 1, delta, current, out);
  return out;
}

IncrementalResult BruteInc(const Schedule& x, std::span<const double> p,
                           int delta, const OracleBudget& budget) {
  if (static_cast<int>(p.size()) != x.size()) {
    throw std::invalid_argument("scenario and schedule sizes differ");
  }
  const std::vector<RecoveryMatching> all =
      EnumerateRecoveries(x.size(), delta, budget);
  IncrementalResult best;
  bool have = false;
  for (const RecoveryMatching& m : all) {
    Schedule y = ApplySwaps(x, m);
    const double c = ScheduleCost(y, p);
    if (!have || c < best.value) {
      best = {c, m, std::move(y), false};
      have = true;
    }
  }
  return best;
}

AdversarialResult BruteAdv(const Schedule& x, const Polyhedron& u, int delta,
                           const OracleBudget& budget) {
  const int n = x.size();
  if (u.dim() != n) {
    throw std::invalid_argument("scenario set and schedule sizes differ");
  }
  const std::vector<RecoveryMatching> all =
      EnumerateRecoveries(n, delta, budget);
  LinearProgram lp(Sense::kMaximize);
  for (int i = 0; i < n; ++i) lp.AddVariable(0.0, kInfinity, 0.0);
  const int t = lp.AddVariable(-kInfinity, kInfinity, 1.0, "t");
  for (const RecoveryMatching& m : all) {
    const Schedule y = ApplySwaps(x, m);
    std::vector<Term> terms{{t, 1.0}};
    for (int j = 1; j <= n; ++j) {
      terms.push_back({y.job_at(j) - 1, -(n + 1.0 - j)});
    }
    lp.AddRow(std::move(terms), Relation::kLessEqual, 0.0);
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
    throw std::runtime_error(std::string("epigraph LP is ") +
                             ToString(sol.status));
  }
  return {sol.objective, Scenario(sol.x.begin(), sol.x.begin() + n)};
}

RecoverableOptimum BruteRecoverable(const Polyhedron& u, int delta,
                                    const OracleBudget& budget) {
  CheckBudget(budget);
  const int n = u.dim();
  if (n > budget.max_n) {
    throw OracleLimitError("n = " + std::to_string(n) +
                           " exceeds the permutation budget");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  RecoverableOptimum best{kInfinity, Schedule::Identity(n)};
  do {
    Schedule x(perm);
    const double v = BruteAdv(x, u, delta, budget).value;
    // Near-ties keep the lexicographically earlier schedule.
    if (std::isinf(best.value) ||
        v < best.value - 1e-9 * (1.0 + std::abs(best.value))) {
      best = {v, std::move(x)};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace rrsched
