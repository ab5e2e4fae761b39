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

// Revised bounded-variable primal simplex with a product-form inverse,
// plus a dual simplex for warm starts after bound changes.
//
// Problems are stated as
//
//   min/max  c'x
//   s.t.     a_r'x  {<=, =, >=}  b_r      for every row r
//            lo <= x <= hi
//
// with lo in {finite, -inf} and hi in {finite, +inf}. Variable bounds never
// become rows: finite upper bounds are handled by the ratio test, and fixed
// variables are substituted out unless a basis is carried between solves.
//
// Pricing is Dantzig (largest reduced cost). After a fixed number of
// consecutive degenerate pivots the solver switches to Bland's rule until
// the objective moves again, which rules out cycling.

#ifndef RRSCHED_LP_H_
#define RRSCHED_LP_H_

#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrsched {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var;
  double coef;
};

struct Row {
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(Sense sense) : sense_(sense) {}

  // Returns the index of the new variable.
  int AddVariable(double lo, double hi, double cost, std::string name = {});
  // Returns the index of the new row. Terms on the same variable are summed.
  int AddRow(std::vector<Term> terms, Relation relation, double rhs);

  void SetBounds(int var, double lo, double hi);
  void SetCost(int var, double cost) { cost_.at(var) = cost; }
  void set_sense(Sense sense) { sense_ = sense; }

  Sense sense() const { return sense_; }
  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& name(int var) const { return names_[var]; }

  double Objective(const std::vector<double>& x) const;
  double Activity(int row, const std::vector<double>& x) const;

  // Largest violation of a row or bound by x, scaled by 1 + |rhs| for rows.
  // `worst_row` receives the offending row index, or -1 for a bound.
  double MaxViolation(const std::vector<double>& x,
                      int* worst_row = nullptr) const;

  // Plain-text dump: a header, the objective, one line per row with the
  // dense coefficients, relation and rhs, then one line per variable bound.
  void Dump(std::ostream& os) const;

 private:
  Sense sense_ = Sense::kMinimize;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_pivots_before_bland = 1000;
  // 0 selects a limit proportional to the tableau size.
  int max_iterations = 0;
};

// Raised when the simplex exceeds its iteration safeguard or loses
// numerical accuracy. Never swallowed by the library.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simplex basis in terms of the original variables and rows. Rows are
// kBasic when their slack is basic.
struct LpBasis {
  enum Status : unsigned char { kAtLower, kAtUpper, kBasic };
  std::vector<Status> var;
  std::vector<Status> row;
};

LpSolution SolveLp(const LinearProgram& lp, const LpOptions& options = {});

// As above. A nonempty `basis` from an optimal solve of the same program
// with other bounds is used as the starting point of a dual simplex; on
// return it holds the final basis when the status is kOptimal. Falls back
// to a cold start whenever the warm start breaks down.
LpSolution SolveLp(const LinearProgram& lp, const LpOptions& options,
                   LpBasis* basis);

}  // namespace rrsched

#endif  // RRSCHED_LP_H_
