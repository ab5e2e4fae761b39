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

#include "rrsched/uncertainty.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rrsched/lp.h"

namespace rrsched {

Polyhedron::Polyhedron(int dim, std::vector<Halfspace> rows)
    : dim_(dim), rows_(std::move(rows)) {
  if (dim_ < 1) throw std::invalid_argument("polyhedron dimension < 1");
  for (const Halfspace& h : rows_) {
    if (static_cast<int>(h.a.size()) != dim_) {
      throw std::invalid_argument("polyhedron row has wrong length");
    }
    for (double v : h.a) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite row");
    }
    if (!std::isfinite(h.b)) throw std::invalid_argument("non-finite rhs");
  }
}

Polyhedron BudgetedPolyhedron(const Instance& inst, double gamma,
                              BudgetNormalization normalization) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("budget must be finite and nonnegative");
  }
  const int n = inst.size();
  std::vector<Halfspace> rows;
  rows.reserve(2 * n + 1);
  for (int i = 0; i < n; ++i) {
    Halfspace h{std::vector<double>(n, 0.0), inst.nominal()[i] +
                                                 inst.deviation()[i]};
    h.a[i] = 1.0;
    rows.push_back(std::move(h));
  }
  for (int i = 0; i < n; ++i) {
    Halfspace h{std::vector<double>(n, 0.0), -inst.nominal()[i]};
    h.a[i] = -1.0;
    rows.push_back(std::move(h));
  }
  Halfspace budget{std::vector<double>(n, 0.0), gamma};
  bool any = false;
  for (int i = 0; i < n; ++i) {
    const double dev = normalization == BudgetNormalization::kDeviation
                           ? inst.deviation()[i]
                           : inst.deviation()[i] - inst.nominal()[i];
    if (dev != 0.0) {
      budget.a[i] = 1.0 / dev;
      budget.b += inst.nominal()[i] / dev;
      any = true;
    }
  }
  if (any) rows.push_back(std::move(budget));
  return Polyhedron(n, std::move(rows));
}

bool Contains(const Polyhedron& u, std::span<const double> p, double tol) {
  if (static_cast<int>(p.size()) != u.dim()) {
    throw std::invalid_argument("scenario dimension mismatch");
  }
  for (double v : p) {
    if (v < -tol) return false;
  }
  for (const Halfspace& h : u.rows()) {
    double lhs = 0.0;
    for (int i = 0; i < u.dim(); ++i) lhs += h.a[i] * p[i];
    if (lhs > h.b + tol * (1.0 + std::abs(h.b))) return false;
  }
  return true;
}

namespace {

LinearProgram ScenarioLp(const Polyhedron& u, std::span<const double> weight) {
  LinearProgram lp(Sense::kMaximize);
  for (int i = 0; i < u.dim(); ++i) {
    lp.AddVariable(0.0, kInfinity, weight.empty() ? 0.0 : weight[i],
                   "p[" + std::to_string(i + 1) + "]");
  }
  for (const Halfspace& h : u.rows()) {
    std::vector<Term> terms;
    for (int i = 0; i < u.dim(); ++i) {
      if (h.a[i] != 0.0) terms.push_back({i, h.a[i]});
    }
    lp.AddRow(std::move(terms), Relation::kLessEqual, h.b);
  }
  return lp;
}

}  // namespace

CompactnessReport ValidateCompact(const Polyhedron& u) {
  CompactnessReport report;
  LinearProgram lp = ScenarioLp(u, {});
  if (SolveLp(lp).status == LpStatus::kInfeasible) {
    report.kind = CompactnessReport::Kind::kEmpty;
    return report;
  }
  report.upper.assign(u.dim(), 0.0);
  for (int i = 0; i < u.dim(); ++i) {
    for (int j = 0; j < u.dim(); ++j) lp.SetCost(j, i == j ? 1.0 : 0.0);
    const LpSolution sol = SolveLp(lp);
    if (sol.status == LpStatus::kUnbounded) {
      report.kind = CompactnessReport::Kind::kUnbounded;
      report.coordinate = i + 1;
      report.upper.clear();
      return report;
    }
    report.upper[i] = sol.objective;
  }
  return report;
}

LinearMax MaximizeOver(const Polyhedron& u, std::span<const double> weight) {
  if (static_cast<int>(weight.size()) != u.dim()) {
    throw std::invalid_argument("weight dimension mismatch");
  }
  const LpSolution sol = SolveLp(ScenarioLp(u, weight));
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("scenario LP is ") +
                             ToString(sol.status));
  }
  return {sol.objective, sol.x};
}

}  // namespace rrsched
