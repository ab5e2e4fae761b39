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

// Best-bound branch-and-bound over LP relaxations for 0/1 mixed-integer
// minimization problems.
//
// Branching picks the most fractional binary of the highest priority class
// (lowest index on ties). Open
// nodes are ordered by their parent's LP bound, then by depth (deeper
// first), then by creation order, so the search tree is a deterministic
// function of the input. The wall clock only decides when to stop.

#ifndef RRSCHED_MILP_H_
#define RRSCHED_MILP_H_

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rrsched/lp.h"

namespace rrsched {

struct MixedIntegerProgram {
  LinearProgram lp;          // must be a minimization
  std::vector<int> binaries; // bounded in [0, 1] by `lp`
  // Optional, parallel to `binaries`. Fractional binaries of the highest
  // priority are branched on first.
  std::vector<int> priority;
};

struct WarmStart {
  std::vector<double> x;
  double objective = 0.0;
};

struct SolveConfig {
  double time_limit = 600.0;  // seconds
  double int_tol = 1e-6;
  double gap_tol = 1e-9;
  // Row/bound tolerance applied when checking a warm start.
  double feas_tol = 1e-6;
  std::optional<WarmStart> warm_start;
  // Optional primal heuristic, called with the LP solution of every node
  // that is neither pruned nor integral. A returned vector is checked like a
  // warm start and becomes the incumbent if it is accepted and improving.
  std::function<std::optional<std::vector<double>>(const std::vector<double>&)>
      primal_heuristic;
};

enum class MilpStatus { kOptimal, kTimeLimit, kInfeasible };

const char* ToString(MilpStatus status);

struct IncumbentEvent {
  double time;  // seconds since the solve started
  long nodes;
  double lb;
  double ub;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  std::optional<std::vector<double>> incumbent;
  double ub = kInfinity;   // incumbent objective
  double lb = -kInfinity;  // best dual bound
  long nodes = 0;
  double wall_time = 0.0;
  bool warm_start_accepted = false;
  std::vector<IncumbentEvent> log;
};

struct WarmStartCheck {
  bool accepted = false;
  int row = -1;  // violated row, -1 for bound/integrality/dimension issues
  std::string reason;
};

// Accepts `x` iff it has the right dimension, is integral on the binaries
// within `int_tol`, and satisfies every bound and row within `feas_tol`.
WarmStartCheck CheckWarmStart(const MixedIntegerProgram& mip,
                              const std::vector<double>& x,
                              double feas_tol = 1e-6, double int_tol = 1e-6);

// Throws std::invalid_argument for malformed programs and NumericalError
// (with node context) when an LP relaxation fails.
MilpSolution SolveMilp(const MixedIntegerProgram& mip,
                       const SolveConfig& config = {});

// CSV with header time_s,nodes,lb,ub and one line per incumbent update.
void WriteSolveLog(std::ostream& os, const MilpSolution& solution);

}  // namespace rrsched

#endif  // RRSCHED_MILP_H_
