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


// Heuristic first-stage schedules, each evaluated exactly by the adversarial
// LP at the requested delta.

#ifndef RRSCHED_HEURISTICS_H_
#define RRSCHED_HEURISTICS_H_

#include <optional>
#include <string_view>

#include "rrsched/instance.h"
#include "rrsched/milp.h"
#include "rrsched/uncertainty.h"

namespace rrsched {

enum class HeuristicMethod { kSorting, kMaxMin, kMinMax };

// "sorting", "maxmin" or "minmax".
const char* ToString(HeuristicMethod method);
std::optional<HeuristicMethod> ParseHeuristicMethod(std::string_view name);

struct HeuristicResult {
  Schedule schedule = Schedule::Identity(1);
  double value = 0.0;  // AdversarialValue(schedule, U, delta)
  HeuristicMethod method = HeuristicMethod::kSorting;
  double wall_time = 0.0;
  // kMaxMin: optimal value of the max-min LP. kMinMax: objective of the
  // model solved without recourse. kSorting: unused (0).
  double inner_value = 0.0;
};

// Jobs by non-decreasing p_hat + p_bar, ties by index.
HeuristicResult SortingHeuristic(const Instance& inst, const Polyhedron& u,
                                 int delta);
// Without an instance: jobs by the largest value of p_i over U.
HeuristicResult SortingHeuristic(const Polyhedron& u, int delta);

// Worst scenario of max_{p in U} min_x cost(x, p), solved as one LP with
// the inner assignment problem dualized, followed by SPT under it.
HeuristicResult MaxMinHeuristic(const Polyhedron& u, int delta);

// ASSIGNMENT model with delta = 0. Throws std::runtime_error if the solve
// ends without a schedule.
HeuristicResult MinMaxHeuristic(const Polyhedron& u, int delta,
                                const SolveConfig& config = {});

}  // namespace rrsched

#endif  // RRSCHED_HEURISTICS_H_
