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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace rrsched {

const char* ToString(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal:
      return "OPTIMAL";
    case MilpStatus::kTimeLimit:
      return "TIME_LIMIT";
    case MilpStatus::kInfeasible:
      return "INFEASIBLE";
  }
  return "?";
}

namespace {

void Validate(const MixedIntegerProgram& mip) {
  if (mip.lp.sense() != Sense::kMinimize) {
    throw std::invalid_argument("MILP must be a minimization");
  }
  if (!mip.priority.empty() && mip.priority.size() != mip.binaries.size()) {
    throw std::invalid_argument("priority must be parallel to binaries");
  }
  for (int j : mip.binaries) {
    if (j < 0 || j >= mip.lp.num_vars()) {
      throw std::invalid_argument("binary index out of range");
    }
    if (mip.lp.lower()[j] < 0.0 || mip.lp.upper()[j] > 1.0) {
      throw std::invalid_argument("binary variable " + mip.lp.name(j) +
                                  " not bounded in [0, 1]");
    }
  }
}

void ValidateConfig(const SolveConfig& config) {
  if (!(config.time_limit > 0.0) || !(config.int_tol > 0.0) ||
      !(config.gap_tol > 0.0) || !(config.feas_tol > 0.0)) {
    throw std::invalid_argument("limits and tolerances must be positive");
  }
}

bool GapClosed(double lb, double ub, double gap_tol) {
  return ub - lb <= gap_tol * std::max(1.0, std::abs(ub));
}

struct Node {
  double bound;
  int depth;
  long id;
  // (variable, value) pairs fixed along the path from the root.
  std::vector<std::pair<int, double>> fixings;
  // Optimal basis of the parent's relaxation.
  std::shared_ptr<const LpBasis> basis;
};

struct NodeOrder {
  // std::priority_queue pops the largest element, so "less" means "worse".
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

}  // namespace

WarmStartCheck CheckWarmStart(const MixedIntegerProgram& mip,
                              const std::vector<double>& x, double feas_tol,
                              double int_tol) {
  const LinearProgram& lp = mip.lp;
  if (static_cast<int>(x.size()) != lp.num_vars()) {
    return {false, -1, "dimension mismatch"};
  }
  for (int j : mip.binaries) {
    if (std::abs(x[j] - std::round(x[j])) > int_tol) {
      return {false, -1, "binary " + lp.name(j) + " is fractional"};
    }
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (x[j] < lp.lower()[j] - feas_tol || x[j] > lp.upper()[j] + feas_tol) {
      return {false, -1, "bound of " + lp.name(j) + " violated"};
    }
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    const Row& row = lp.rows()[r];
    const double act = lp.Activity(r, x);
    const double tol = feas_tol * (1.0 + std::abs(row.rhs));
    bool ok = true;
    switch (row.relation) {
      case Relation::kLessEqual:
        ok = act <= row.rhs + tol;
        break;
      case Relation::kGreaterEqual:
        ok = act >= row.rhs - tol;
        break;
      case Relation::kEqual:
        ok = std::abs(act - row.rhs) <= tol;
        break;
    }
    if (!ok) {
      return {false, r,
              "row " + std::to_string(r) + " violated (activity " +
                  std::to_string(act) + ", rhs " + std::to_string(row.rhs) +
                  ")"};
    }
  }
  return {true, -1, ""};
}

MilpSolution SolveMilp(const MixedIntegerProgram& mip,
                       const SolveConfig& config) {
  Validate(mip);
  ValidateConfig(config);
  using Clock = std::chrono::steady_clock;
  const Clock::time_point start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  MilpSolution result;
  auto record = [&](double lb) {
    result.log.push_back({elapsed(), result.nodes, lb, result.ub});
  };

  if (config.warm_start) {
    const WarmStartCheck check =
        CheckWarmStart(mip, config.warm_start->x, config.feas_tol,
                       config.int_tol);
    if (check.accepted) {
      std::vector<double> x = config.warm_start->x;
      for (int j : mip.binaries) x[j] = std::round(x[j]);
      result.warm_start_accepted = true;
      result.ub = mip.lp.Objective(x);
      result.incumbent = std::move(x);
      record(-kInfinity);
    }
  }

  LinearProgram work = mip.lp;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({-kInfinity, 0, next_id++, {}, nullptr});
  bool timed_out = false;

  while (!open.empty()) {
    if (result.incumbent && GapClosed(open.top().bound, result.ub,
                                      config.gap_tol)) {
      break;
    }
    if (elapsed() > config.time_limit) {
      timed_out = true;
      break;
    }
    Node node = open.top();
    open.pop();
    ++result.nodes;

    for (const auto& [var, value] : node.fixings) {
      work.SetBounds(var, value, value);
    }
    LpSolution relax;
    auto basis = std::make_shared<LpBasis>();
    if (node.basis) *basis = *node.basis;
    try {
      relax = SolveLp(work, LpOptions(), basis.get());
    } catch (const NumericalError& e) {
      throw NumericalError("node " + std::to_string(node.id) + " (depth " +
                           std::to_string(node.depth) + "): " + e.what());
    }
    for (const auto& [var, value] : node.fixings) {
      work.SetBounds(var, mip.lp.lower()[var], mip.lp.upper()[var]);
    }

    if (relax.status == LpStatus::kInfeasible) continue;
    if (relax.status == LpStatus::kUnbounded) {
      throw std::invalid_argument("LP relaxation is unbounded at node " +
                                  std::to_string(node.id));
    }
    const double bound = std::max(node.bound, relax.objective);
    if (result.incumbent && GapClosed(bound, result.ub, config.gap_tol)) {
      continue;
    }

    int branch_var = -1;
    int best_priority = 0;
    double best_frac = 0.0;
    for (size_t b = 0; b < mip.binaries.size(); ++b) {
      const int j = mip.binaries[b];
      const double f = relax.x[j] - std::floor(relax.x[j]);
      const double frac = std::min(f, 1.0 - f);
      if (frac <= config.int_tol) continue;
      const int priority = mip.priority.empty() ? 0 : mip.priority[b];
      if (branch_var < 0 || priority > best_priority ||
          (priority == best_priority &&
           (frac > best_frac || (frac == best_frac && j < branch_var)))) {
        best_priority = priority;
        best_frac = frac;
        branch_var = j;
      }
    }

    if (branch_var < 0) {
      std::vector<double> x = std::move(relax.x);
      for (int j : mip.binaries) x[j] = std::round(x[j]);
      const double value = mip.lp.Objective(x);
      if (!result.incumbent || value < result.ub) {
        result.ub = value;
        result.incumbent = std::move(x);
        const double lb =
            open.empty() ? value : std::min(value, open.top().bound);
        record(lb);
      }
      continue;
    }

    if (config.primal_heuristic) {
      std::optional<std::vector<double>> candidate =
          config.primal_heuristic(relax.x);
      if (candidate && CheckWarmStart(mip, *candidate, config.feas_tol,
                                      config.int_tol)
                           .accepted) {
        for (int j : mip.binaries) (*candidate)[j] = std::round((*candidate)[j]);
        const double value = mip.lp.Objective(*candidate);
        if (!result.incumbent || value < result.ub) {
          result.ub = value;
          result.incumbent = std::move(*candidate);
          record(open.empty() ? bound : std::min(bound, open.top().bound));
        }
        if (GapClosed(bound, result.ub, config.gap_tol)) continue;
      }
    }

    for (double value : {0.0, 1.0}) {
      Node child{bound, node.depth + 1, next_id++, node.fixings, basis};
      child.fixings.emplace_back(branch_var, value);
      open.push(std::move(child));
    }
  }

  result.wall_time = elapsed();
  if (timed_out) {
    result.status = MilpStatus::kTimeLimit;
    result.lb = open.empty() ? result.ub : open.top().bound;
    if (result.incumbent) result.lb = std::min(result.lb, result.ub);
  } else if (result.incumbent) {
    result.status = MilpStatus::kOptimal;
    result.lb = open.empty() ? result.ub
                             : std::min(result.ub, open.top().bound);
  } else {
    result.status = MilpStatus::kInfeasible;
  }
  return result;
}

void WriteSolveLog(std::ostream& os, const MilpSolution& solution) {
  os << "time_s,nodes,lb,ub\n";
  char buf[128];
  for (const IncumbentEvent& e : solution.log) {
    std::snprintf(buf, sizeof(buf), "%.6f,%ld,%.17g,%.17g\n", e.time, e.nodes,
                  e.lb, e.ub);
    os << buf;
  }
}

}  // namespace rrsched
