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

// LP formulations of the second-stage (incremental) problem and of the
// adversary's problem for a fixed first-stage schedule.

#ifndef RRSCHED_SUBPROBLEMS_H_
#define RRSCHED_SUBPROBLEMS_H_

#include <span>
#include <stdexcept>

#include "rrsched/instance.h"
#include "rrsched/uncertainty.h"

namespace rrsched {

// Raised when an incremental LP keeps returning a fractional vertex even
// after the perturbed re-solve.
class IntegralityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cost decrease obtained by exchanging the positions of jobs i and j in x:
// (p_i - p_j) * (pos(j) - pos(i)).
double SwapGain(int i, int j, std::span<const double> p, const Schedule& x);

struct IncrementalResult {
  double value = 0.0;
  RecoveryMatching matching;
  Schedule second_stage = Schedule::Identity(1);
  // True if the first LP vertex was fractional and the perturbed re-solve
  // was needed.
  bool perturbed = false;
};

inline constexpr double kIntegralityTol = 1e-6;

// Cardinality-constrained matching LP over the job pairs i < j.
IncrementalResult IncrementalMatching(const Schedule& x,
                                      std::span<const double> p, int delta);

// Symmetric assignment LP: y_ij = 1 means job i takes the first-stage
// position of job j.
IncrementalResult IncrementalAssignment(const Schedule& x,
                                        std::span<const double> p, int delta);

struct AdversarialResult {
  double value = 0.0;
  Scenario worst_scenario;
};

// max over p in U of the incremental value, as one LP in (p, alpha, gamma).
// Throws std::runtime_error if U is empty or unbounded.
AdversarialResult AdversarialValue(const Schedule& x, const Polyhedron& u,
                                   int delta);

}  // namespace rrsched

#endif  // RRSCHED_SUBPROBLEMS_H_
