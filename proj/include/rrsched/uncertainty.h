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

// Polyhedral scenario sets U = {p >= 0 : A p <= b}.

#ifndef RRSCHED_UNCERTAINTY_H_
#define RRSCHED_UNCERTAINTY_H_

#include <span>
#include <vector>

#include "rrsched/instance.h"

namespace rrsched {

struct Halfspace {
  std::vector<double> a;  // length n
  double b = 0.0;
};

class Polyhedron {
 public:
  Polyhedron(int dim, std::vector<Halfspace> rows);

  int dim() const { return dim_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<Halfspace>& rows() const { return rows_; }
  double a(int row, int job_index) const { return rows_[row].a[job_index]; }
  double b(int row) const { return rows_[row].b; }

 private:
  int dim_;
  std::vector<Halfspace> rows_;
};

// Denominator d_i of the normalized deviation (p_i - p_hat_i) / d_i in the
// budget row.
enum class BudgetNormalization {
  kDeviation,   // d_i = p_bar_i
  kDifference,  // d_i = p_bar_i - p_hat_i
};

// Budgeted set around an instance: p_i in [p_hat_i, p_hat_i + p_bar_i] and
// sum over jobs with d_i != 0 of (p_i - p_hat_i) / d_i <= gamma.
//
// Rows are emitted as p_i <= p_hat_i + p_bar_i for every job, then
// -p_i <= -p_hat_i for every job, then the budget row
// sum p_i / d_i <= gamma + sum p_hat_i / d_i. Jobs with d_i = 0 are skipped
// in the budget row; the row is omitted when no job remains.
//
// kDifference reads the interval bound and the denominator independently,
// so negative denominators are kept as they are.
Polyhedron BudgetedPolyhedron(
    const Instance& inst, double gamma,
    BudgetNormalization normalization = BudgetNormalization::kDeviation);

inline constexpr double kMembershipTol = 1e-9;

// p >= -tol componentwise and A p <= b + tol * (1 + |b|) rowwise.
bool Contains(const Polyhedron& u, std::span<const double> p,
              double tol = kMembershipTol);

struct CompactnessReport {
  enum class Kind { kOk, kEmpty, kUnbounded };
  Kind kind = Kind::kOk;
  int coordinate = 0;  // 1-based job whose maximum is unbounded
  std::vector<double> upper;  // max of each p_i over U when kOk

  bool ok() const { return kind == Kind::kOk; }
};

// Solves one feasibility LP and one maximization per coordinate.
CompactnessReport ValidateCompact(const Polyhedron& u);

// Largest value of sum_i weight_i * p_i over U, with the maximizer.
struct LinearMax {
  double value;
  Scenario argmax;
};
LinearMax MaximizeOver(const Polyhedron& u, std::span<const double> weight);

}  // namespace rrsched

#endif  // RRSCHED_UNCERTAINTY_H_
