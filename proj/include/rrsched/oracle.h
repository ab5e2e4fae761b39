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

// Exhaustive reference solvers for small instances.

#ifndef RRSCHED_ORACLE_H_
#define RRSCHED_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rrsched/instance.h"
#include "rrsched/subproblems.h"
#include "rrsched/uncertainty.h"

namespace rrsched {

struct OracleBudget {
  int max_n = 7;  // first-stage enumeration limit, at most 9
  // Largest number of recoveries that may be enumerated for one schedule.
  std::int64_t max_recoveries = 1'000'000;
};

// Thrown when an input exceeds the oracle budget.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of sets of at most `delta` disjoint pairs among n jobs.
std::int64_t CountRecoveries(int n, int delta);

// Every set of at most `delta` disjoint job pairs, each listed once. Pairs
// are chosen by always deciding the smallest undecided job first.
std::vector<RecoveryMatching> EnumerateRecoveries(
    int n, int delta, const OracleBudget& budget = {});

IncrementalResult BruteInc(const Schedule& x, std::span<const double> p,
                           int delta, const OracleBudget& budget = {});

// max t s.t. t <= cost(y, p) for every recovery y of x, p in U.
AdversarialResult BruteAdv(const Schedule& x, const Polyhedron& u, int delta,
                           const OracleBudget& budget = {});

struct RecoverableOptimum {
  double value;
  Schedule first_stage;
};

// Minimum of BruteAdv over all n! schedules; the lexicographically first
// minimizer wins ties.
RecoverableOptimum BruteRecoverable(const Polyhedron& u, int delta,
                                    const OracleBudget& budget = {});

}  // namespace rrsched

#endif  // RRSCHED_ORACLE_H_
