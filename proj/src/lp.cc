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

#include "rrsched/lp.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <ostream>
#include <utility>

namespace rrsched {

int LinearProgram::AddVariable(double lo, double hi, double cost,
                               std::string name) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInfinity ||
      hi == -kInfinity) {
    throw std::invalid_argument("invalid bounds for variable " + name);
  }
  const int index = num_vars();
  if (name.empty()) name = "v" + std::to_string(index);
  cost_.push_back(cost);
  lower_.push_back(lo);
  upper_.push_back(hi);
  names_.push_back(std::move(name));
  return index;
}

int LinearProgram::AddRow(std::vector<Term> terms, Relation relation,
                          double rhs) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("row rhs not finite");
  std::map<int, double> merged;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_vars()) {
      throw std::out_of_range("row references unknown variable");
    }
    if (!std::isfinite(t.coef)) {
      throw std::invalid_argument("row coefficient not finite");
    }
    merged[t.var] += t.coef;
  }
  Row row;
  row.relation = relation;
  row.rhs = rhs;
  for (const auto& [var, coef] : merged) {
    if (coef != 0.0) row.terms.push_back({var, coef});
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LinearProgram::SetBounds(int var, double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("invalid bounds for " + names_.at(var));
  }
  lower_.at(var) = lo;
  upper_.at(var) = hi;
}

double LinearProgram::Objective(const std::vector<double>& x) const {
  double value = 0.0;
  for (int j = 0; j < num_vars(); ++j) value += cost_[j] * x[j];
  return value;
}

double LinearProgram::Activity(int row, const std::vector<double>& x) const {
  double value = 0.0;
  for (const Term& t : rows_[row].terms) value += t.coef * x[t.var];
  return value;
}

double LinearProgram::MaxViolation(const std::vector<double>& x,
                                   int* worst_row) const {
  double worst = 0.0;
  int where = -1;
  for (int j = 0; j < num_vars(); ++j) {
    const double v = std::max(lower_[j] - x[j], x[j] - upper_[j]);
    if (v > worst) {
      worst = v;
      where = -1;
    }
  }
  for (int r = 0; r < num_rows(); ++r) {
    const double activity = Activity(r, x);
    const double scale = 1.0 + std::abs(rows_[r].rhs);
    double v = 0.0;
    switch (rows_[r].relation) {
      case Relation::kLessEqual:
        v = activity - rows_[r].rhs;
        break;
      case Relation::kGreaterEqual:
        v = rows_[r].rhs - activity;
        break;
      case Relation::kEqual:
        v = std::abs(activity - rows_[r].rhs);
        break;
    }
    v /= scale;
    if (v > worst) {
      worst = v;
      where = r;
    }
  }
  if (worst_row != nullptr) *worst_row = where;
  return worst;
}

void LinearProgram::Dump(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << (sense_ == Sense::kMinimize ? "MIN" : "MAX") << ' ' << num_vars()
     << ' ' << num_rows() << '\n';
  os << "OBJ";
  for (double c : cost_) os << ' ' << c;
  os << '\n';
  std::vector<double> dense(num_vars());
  for (const Row& row : rows_) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (const Term& t : row.terms) dense[t.var] = t.coef;
    for (double a : dense) os << a << ' ';
    switch (row.relation) {
      case Relation::kLessEqual:
        os << "<=";
        break;
      case Relation::kEqual:
        os << "=";
        break;
      case Relation::kGreaterEqual:
        os << ">=";
        break;
    }
    os << ' ' << row.rhs << '\n';
  }
  for (int j = 0; j < num_vars(); ++j) {
    os << "BOUND " << names_[j] << ' ' << lower_[j] << ' ' << upper_[j]
       << '\n';
  }
  os.precision(old_precision);
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "OPTIMAL";
    case LpStatus::kInfeasible:
      return "INFEASIBLE";
    case LpStatus::kUnbounded:
      return "UNBOUNDED";
  }
  return "?";
}

namespace {

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper };

// The basis lost rank; the solve is restarted with a stricter pivot
// tolerance.
struct SingularBasis {};

// Elementary transformation of the product-form inverse: the basis column
// at `row` was replaced by a column whose representation in the previous
// basis is alpha (pivot entry alpha[row] = `pivot`, the rest in idx/val).
struct Eta {
  int row;
  double pivot;
  std::vector<int> idx;
  std::vector<double> val;
};

// Standard-form problem: rows a_i'x = b_i, every column bounded in
// [0, upper_j]. Columns are structural, then slacks, then artificials; the
// initial basis consists of unit columns.
struct StandardForm {
  int m = 0;
  int n = 0;
  std::vector<int> col_start;  // CSC
  std::vector<int> col_row;
  std::vector<double> col_val;
  std::vector<double> upper;
  std::vector<double> rhs;
  std::vector<int> initial_basis;
  // Per row, the slack column if the row has one, otherwise its artificial.
  std::vector<int> unit_col;
};

// The warm-started dual simplex gave up; the caller solves from scratch.
struct WarmStartFailed {};

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm& sf, const LpOptions& options,
                 int max_iterations)
      : sf_(sf),
        options_(options),
        max_iterations_(max_iterations),
        upper_(sf.upper),
        state_(sf.n, VarState::kAtLower),
        basis_(sf.initial_basis),
        beta_(sf.rhs),
        work_(sf.m, 0.0),
        dual_(sf.m, 0.0),
        reduced_(sf.n, 0.0) {
    for (int b : basis_) state_[b] = VarState::kBasic;
  }

  int iterations() const { return iterations_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<double>& beta() const { return beta_; }
  VarState state(int j) const { return state_[j]; }
  double upper(int j) const { return upper_[j]; }
  void set_upper(int j, double u) { upper_[j] = u; }

  // Minimizes cost'x from the current basis. Columns at or beyond
  // `entering_limit` never enter. Returns with a freshly inverted basis.
  LpStatus Run(const std::vector<double>& cost, int entering_limit) {
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (etas_.size() >= refactor_at_) {
        Reinvert();
      }
      if (iterations_ >= max_iterations_) {
        throw NumericalError("simplex iteration limit exceeded (" +
                             std::to_string(max_iterations_) + ")");
      }
      Price(cost, entering_limit);
      const int q = ChooseEntering(entering_limit, bland);
      if (q < 0) {
        if (fresh_) return LpStatus::kOptimal;
        // Confirm optimality on a fresh factorization.
        Reinvert();
        continue;
      }
      const double dir = state_[q] == VarState::kAtLower ? 1.0 : -1.0;
      LoadColumn(q, work_);
      Ftran(work_);

      int leave_row = -1;
      bool leave_to_upper = false;
      const double step = RatioTest(dir, bland, &leave_row, &leave_to_upper);
      const double flip = upper_[q];
      if (leave_row < 0 && flip == kInfinity) {
        if (!fresh_) {
          Reinvert();
          continue;
        }
        return LpStatus::kUnbounded;
      }
      ++iterations_;

      if (leave_row < 0 || flip <= step) {
        for (int i = 0; i < sf_.m; ++i) {
          if (work_[i] != 0.0) beta_[i] -= work_[i] * dir * flip;
        }
        state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
        fresh_ = false;
        degenerate_run = 0;
        bland = false;
        continue;
      }

      if (step <= 1e-12) {
        if (++degenerate_run >= options_.degenerate_pivots_before_bland) {
          bland = true;
        }
      } else {
        degenerate_run = 0;
        bland = false;
      }

      for (int i = 0; i < sf_.m; ++i) {
        if (work_[i] != 0.0) beta_[i] -= work_[i] * dir * step;
      }
      const double entering_value = (dir > 0 ? 0.0 : upper_[q]) + dir * step;
      const int leaving = basis_[leave_row];
      state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;
      PushEta(leave_row, work_);
      fresh_ = false;
      basis_[leave_row] = q;
      state_[q] = VarState::kBasic;
      beta_[leave_row] = entering_value;
    }
  }

  // Replaces the basis by `basic` (any number of columns) with the given
  // nonbasic columns at their upper bound, repairing rank deficiency with
  // unit columns.
  void LoadBasis(const std::vector<int>& basic,
                 const std::vector<int>& at_upper) {
    std::fill(state_.begin(), state_.end(), VarState::kAtLower);
    for (int j : at_upper) state_[j] = VarState::kAtUpper;
    for (int j : basic) state_[j] = VarState::kBasic;
    basis_ = basic;
    Reinvert(/*repair=*/true);
  }

  // Textbook dual simplex from a dual feasible basis; stops once the basic
  // values are inside their boxes. Returns kInfeasible when a row proves
  // the problem infeasible.
  LpStatus DualRun(const std::vector<double>& cost, int entering_limit,
                   int iteration_limit) {
    const double tol = options_.feasibility_tol;
    const double dtol = options_.optimality_tol;
    std::vector<double> rho(sf_.m);
    std::vector<double> alpha(entering_limit, 0.0);
    for (int it = 0;; ++it) {
      if (it >= iteration_limit) throw WarmStartFailed();
      if (etas_.size() >= refactor_at_) Reinvert();
      int r = -1;
      double worst = 0.0;
      bool to_upper = false;
      for (int i = 0; i < sf_.m; ++i) {
        const double v = beta_[i];
        const double ub = upper_[basis_[i]];
        const double scale = tol * (1.0 + std::abs(v));
        if (v < -scale && -v > worst) {
          worst = -v;
          r = i;
          to_upper = false;
        } else if (v > ub + scale && v - ub > worst) {
          worst = v - ub;
          r = i;
          to_upper = true;
        }
      }
      if (r < 0) {
        if (fresh_) return LpStatus::kOptimal;
        Reinvert();
        continue;
      }
      Price(cost, entering_limit);
      std::fill(rho.begin(), rho.end(), 0.0);
      rho[r] = 1.0;
      Btran(rho);
      // Sign such that a positive entry lets the leaving value move back
      // into its box when the entering column moves away from its bound.
      const double sign = to_upper ? 1.0 : -1.0;
      double relaxed = kInfinity;
      for (int j = 0; j < entering_limit; ++j) {
        alpha[j] = 0.0;
        if (state_[j] == VarState::kBasic || upper_[j] == 0.0) continue;
        double a = 0.0;
        for (int k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
          a += rho[sf_.col_row[k]] * sf_.col_val[k];
        }
        const double dir = state_[j] == VarState::kAtLower ? 1.0 : -1.0;
        a *= sign * dir;
        if (a <= options_.pivot_tol * 10) continue;
        alpha[j] = a;
        const double d = std::max(dir * reduced_[j], 0.0);
        relaxed = std::min(relaxed, (d + dtol) / a);
      }
      if (relaxed == kInfinity) {
        if (fresh_) return LpStatus::kInfeasible;
        Reinvert();
        continue;
      }
      int q = -1;
      for (int j = 0; j < entering_limit; ++j) {
        if (alpha[j] == 0.0) continue;
        const double dir = state_[j] == VarState::kAtLower ? 1.0 : -1.0;
        const double d = std::max(dir * reduced_[j], 0.0);
        if (d / alpha[j] <= relaxed && (q < 0 || alpha[j] > alpha[q])) q = j;
      }
      LoadColumn(q, work_);
      Ftran(work_);
      if (std::abs(work_[r]) <= options_.pivot_tol) throw WarmStartFailed();
      const double target = to_upper ? upper_[basis_[r]] : 0.0;
      const double t = (beta_[r] - target) / work_[r];
      for (int i = 0; i < sf_.m; ++i) {
        if (work_[i] != 0.0) beta_[i] -= work_[i] * t;
      }
      const double entering_value =
          (state_[q] == VarState::kAtLower ? 0.0 : upper_[q]) + t;
      state_[basis_[r]] = to_upper ? VarState::kAtUpper : VarState::kAtLower;
      PushEta(r, work_);
      fresh_ = false;
      basis_[r] = q;
      state_[q] = VarState::kBasic;
      beta_[r] = entering_value;
      ++iterations_;
    }
  }

  // Largest violation of dual feasibility over columns that may enter.
  double DualInfeasibility(const std::vector<double>& cost,
                           int entering_limit) {
    Price(cost, entering_limit);
    double worst = 0.0;
    for (int j = 0; j < entering_limit; ++j) {
      if (state_[j] == VarState::kBasic || upper_[j] == 0.0) continue;
      const double d = reduced_[j];
      if (state_[j] == VarState::kAtLower) {
        worst = std::max(worst, -d);
      } else {
        worst = std::max(worst, d);
      }
    }
    return worst;
  }

  // Rebuilds the product-form inverse from scratch and recomputes the basic
  // values from the rows. With `repair`, dependent columns leave the basis
  // and uncovered rows receive their unit column.
  void Reinvert(bool repair = false) {
    etas_.clear();
    const int m = sf_.m;
    std::vector<bool> taken(m, false);
    std::vector<int> new_basis(m, -1);
    // Singleton columns need no transformation beyond a scaling.
    std::vector<int> rest;
    for (int j : basis_) {
      if (j < 0) continue;
      const int k = sf_.col_start[j];
      if (Length(j) == 1 && !taken[sf_.col_row[k]]) {
        const int r = sf_.col_row[k];
        taken[r] = true;
        new_basis[r] = j;
        if (sf_.col_val[k] != 1.0) etas_.push_back({r, sf_.col_val[k], {}, {}});
      } else {
        rest.push_back(j);
      }
    }
    // Remaining columns: pivot on row singletons of the active submatrix
    // whenever one exists (no fill-in), otherwise on the shortest column,
    // choosing among acceptable pivots the row with the fewest entries.
    const int nr = static_cast<int>(rest.size());
    std::vector<std::vector<int>> row_cols(m);
    std::vector<int> row_count(m, 0);
    std::vector<int> col_count(nr, 0);
    for (int c = 0; c < nr; ++c) {
      const int j = rest[c];
      for (int k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
        const int r = sf_.col_row[k];
        if (taken[r]) continue;
        row_cols[r].push_back(c);
        ++row_count[r];
        ++col_count[c];
      }
    }
    std::vector<int> singletons;
    for (int r = 0; r < m; ++r) {
      if (!taken[r] && row_count[r] == 1) singletons.push_back(r);
    }
    std::vector<bool> done(nr, false);
    std::vector<double> v(m, 0.0);
    for (int left = nr; left > 0; --left) {
      int c = -1;
      int p = -1;
      while (!singletons.empty() && c < 0) {
        const int r = singletons.back();
        singletons.pop_back();
        if (taken[r] || row_count[r] != 1) continue;
        for (int cc : row_cols[r]) {
          if (!done[cc]) c = cc;
        }
        LoadColumn(rest[c], v);
        Ftran(v);
        double vmax = 0.0;
        for (int i = 0; i < m; ++i) {
          if (!taken[i]) vmax = std::max(vmax, std::abs(v[i]));
        }
        if (std::abs(v[r]) >= 1e-3 * vmax && std::abs(v[r]) > 1e-11) {
          p = r;
        } else {
          c = -1;
        }
      }
      if (c < 0) {
        for (int cc = 0; cc < nr; ++cc) {
          if (!done[cc] && (c < 0 || col_count[cc] < col_count[c])) c = cc;
        }
        LoadColumn(rest[c], v);
        Ftran(v);
        double vmax = 0.0;
        for (int i = 0; i < m; ++i) {
          if (!taken[i]) vmax = std::max(vmax, std::abs(v[i]));
        }
        if (vmax < 1e-11) {
          if (!repair) throw SingularBasis();
          done[c] = true;
          state_[rest[c]] = VarState::kAtLower;
          continue;
        }
        for (int i = 0; i < m; ++i) {
          if (taken[i] || std::abs(v[i]) < 0.1 * vmax) continue;
          if (p < 0 || row_count[i] < row_count[p]) p = i;
        }
      }
      done[c] = true;
      taken[p] = true;
      for (int cc : row_cols[p]) --col_count[cc];
      new_basis[p] = rest[c];
      PushEta(p, v);
      const int j = rest[c];
      for (int k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
        const int r = sf_.col_row[k];
        if (taken[r]) continue;
        if (--row_count[r] == 1) singletons.push_back(r);
      }
    }
    for (int r = 0; r < m; ++r) {
      if (taken[r]) continue;
      if (!repair) throw SingularBasis();
      const int j = sf_.unit_col[r];
      if (state_[j] == VarState::kBasic) throw SingularBasis();
      state_[j] = VarState::kBasic;
      LoadColumn(j, v);
      Ftran(v);
      new_basis[r] = j;
      PushEta(r, v);
    }
    basis_ = std::move(new_basis);
    RecomputeBeta();
    fresh_ = true;
    refactor_at_ = etas_.size() + kRefactorInterval;
  }

 private:
  static constexpr std::size_t kRefactorInterval = 100;

  int Length(int j) const { return sf_.col_start[j + 1] - sf_.col_start[j]; }

  void LoadColumn(int j, std::vector<double>& v) const {
    std::fill(v.begin(), v.end(), 0.0);
    for (int k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
      v[sf_.col_row[k]] = sf_.col_val[k];
    }
  }

  void Ftran(std::vector<double>& v) const {
    for (const Eta& e : etas_) {
      double vp = v[e.row];
      if (vp == 0.0) continue;
      vp /= e.pivot;
      v[e.row] = vp;
      for (std::size_t k = 0; k < e.idx.size(); ++k) {
        v[e.idx[k]] -= e.val[k] * vp;
      }
    }
  }

  void Btran(std::vector<double>& y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const Eta& e = *it;
      double s = y[e.row];
      for (std::size_t k = 0; k < e.idx.size(); ++k) {
        s -= e.val[k] * y[e.idx[k]];
      }
      y[e.row] = s / e.pivot;
    }
  }

  // Appends the transformation for pivoting alpha into `row`; identity
  // transformations are skipped.
  void PushEta(int row, const std::vector<double>& alpha) {
    Eta e{row, alpha[row], {}, {}};
    for (int i = 0; i < sf_.m; ++i) {
      if (i == row) continue;
      if (std::abs(alpha[i]) > 1e-14) {
        e.idx.push_back(i);
        e.val.push_back(alpha[i]);
      }
    }
    if (e.idx.empty() && e.pivot == 1.0) return;
    etas_.push_back(std::move(e));
  }

  void RecomputeBeta() {
    std::vector<double> r = sf_.rhs;
    for (int j = 0; j < sf_.n; ++j) {
      if (state_[j] != VarState::kAtUpper) continue;
      for (int k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
        r[sf_.col_row[k]] -= sf_.col_val[k] * upper_[j];
      }
    }
    Ftran(r);
    beta_ = std::move(r);
  }

  void Price(const std::vector<double>& cost, int entering_limit) {
    for (int i = 0; i < sf_.m; ++i) dual_[i] = cost[basis_[i]];
    Btran(dual_);
    for (int j = 0; j < entering_limit; ++j) {
      if (state_[j] == VarState::kBasic) {
        reduced_[j] = 0.0;
        continue;
      }
      double d = cost[j];
      for (int k = sf_.col_start[j]; k < sf_.col_start[j + 1]; ++k) {
        d -= dual_[sf_.col_row[k]] * sf_.col_val[k];
      }
      reduced_[j] = d;
    }
  }

  int ChooseEntering(int entering_limit, bool bland) const {
    int best = -1;
    double best_score = options_.optimality_tol;
    for (int j = 0; j < entering_limit; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic) continue;
      const double d = reduced_[j];
      double score = 0.0;
      if (s == VarState::kAtLower && d < -options_.optimality_tol) {
        score = -d;
      } else if (s == VarState::kAtUpper && d > options_.optimality_tol) {
        score = d;
      } else {
        continue;
      }
      if (upper_[j] == 0.0) continue;  // fixed column
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Harris two-pass ratio test on the entering column held in work_; Bland
  // mode takes the smallest ratio with ties broken by the lowest basic
  // variable index.
  double RatioTest(double dir, bool bland, int* leave_row,
                   bool* leave_to_upper) const {
    const double tol = options_.feasibility_tol;
    const double ptol = options_.pivot_tol;
    double relaxed_min = kInfinity;
    for (int i = 0; i < sf_.m; ++i) {
      const double a = work_[i] * dir;
      if (std::abs(a) <= ptol) continue;
      const int b = basis_[i];
      double r;
      if (a > 0) {
        r = (beta_[i] + tol) / a;
      } else {
        if (upper_[b] == kInfinity) continue;
        r = (upper_[b] - beta_[i] + tol) / -a;
      }
      // Basics already outside their box by more than tol block at once.
      relaxed_min = std::min(relaxed_min, std::max(r, 0.0));
    }
    *leave_row = -1;
    if (relaxed_min == kInfinity) return kInfinity;

    double best_step = kInfinity;
    double best_pivot = 0.0;
    for (int i = 0; i < sf_.m; ++i) {
      const double a = work_[i] * dir;
      if (std::abs(a) <= ptol) continue;
      const int b = basis_[i];
      double r;
      bool to_upper;
      if (a > 0) {
        r = beta_[i] / a;
        to_upper = false;
      } else {
        if (upper_[b] == kInfinity) continue;
        r = (upper_[b] - beta_[i]) / -a;
        to_upper = true;
      }
      r = std::max(r, 0.0);
      if (bland) {
        if (r < best_step - 1e-12 ||
            (r <= best_step + 1e-12 && *leave_row >= 0 &&
             b < basis_[*leave_row])) {
          best_step = r;
          *leave_row = i;
          *leave_to_upper = to_upper;
        }
      } else if (r <= relaxed_min && std::abs(a) > best_pivot) {
        best_pivot = std::abs(a);
        best_step = r;
        *leave_row = i;
        *leave_to_upper = to_upper;
      }
    }
    return best_step;
  }

  const StandardForm& sf_;
  const LpOptions& options_;
  int max_iterations_;
  int iterations_ = 0;
  bool fresh_ = true;
  std::size_t refactor_at_ = kRefactorInterval;
  std::vector<double> upper_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<double> beta_;
  std::vector<double> work_;
  std::vector<double> dual_;
  std::vector<double> reduced_;
  std::vector<Eta> etas_;
};

// How an original variable maps onto standard-form columns:
// x = shift + sum(sign_k * column_k).
struct VarMap {
  double shift = 0.0;
  int col = -1;
  double sign = 1.0;
  int neg_col = -1;  // second column of a free variable
};

}  // namespace

namespace {

// With a non-null `basis`, fixed variables keep their columns so that the
// basis carries over between bound changes; if it is nonempty and `warm`,
// the solve starts from it with the dual simplex.
LpSolution SolveOnce(const LinearProgram& lp, const LpOptions& options,
                     LpBasis* basis, bool warm) {
  const int nv = lp.num_vars();
  const double obj_sign = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;

  std::vector<VarMap> map(nv);
  std::vector<double> col_upper;
  std::vector<double> col_cost;
  for (int j = 0; j < nv; ++j) {
    const double lo = lp.lower()[j];
    const double hi = lp.upper()[j];
    const double c = obj_sign * lp.cost()[j];
    VarMap& vm = map[j];
    if (lo == hi && basis == nullptr) {
      vm.shift = lo;
    } else if (lo != -kInfinity) {
      vm.shift = lo;
      vm.col = static_cast<int>(col_upper.size());
      col_upper.push_back(hi == kInfinity ? kInfinity : hi - lo);
      col_cost.push_back(c);
    } else if (hi != kInfinity) {
      vm.shift = hi;
      vm.sign = -1.0;
      vm.col = static_cast<int>(col_upper.size());
      col_upper.push_back(kInfinity);
      col_cost.push_back(-c);
    } else {
      vm.col = static_cast<int>(col_upper.size());
      col_upper.push_back(kInfinity);
      col_cost.push_back(c);
      vm.neg_col = static_cast<int>(col_upper.size());
      col_upper.push_back(kInfinity);
      col_cost.push_back(-c);
    }
  }
  const int num_struct = static_cast<int>(col_upper.size());

  // Substitute the shifts into every row and drop rows left empty.
  struct StdRow {
    std::vector<Term> terms;
    Relation relation;
    double rhs;
  };
  std::vector<StdRow> std_rows;
  std::vector<int> row_origin;
  const double tol = options.feasibility_tol;
  LpSolution infeasible;
  infeasible.status = LpStatus::kInfeasible;
  infeasible.x.assign(nv, 0.0);
  for (int ri = 0; ri < lp.num_rows(); ++ri) {
    const Row& row = lp.rows()[ri];
    StdRow sr{{}, row.relation, row.rhs};
    for (const Term& t : row.terms) {
      const VarMap& vm = map[t.var];
      sr.rhs -= t.coef * vm.shift;
      if (vm.col >= 0) sr.terms.push_back({vm.col, t.coef * vm.sign});
      if (vm.neg_col >= 0) sr.terms.push_back({vm.neg_col, -t.coef});
    }
    if (sr.terms.empty()) {
      const double scale = tol * (1.0 + std::abs(row.rhs));
      const bool ok =
          (row.relation == Relation::kLessEqual && sr.rhs >= -scale) ||
          (row.relation == Relation::kGreaterEqual && sr.rhs <= scale) ||
          (row.relation == Relation::kEqual && std::abs(sr.rhs) <= scale);
      if (!ok) return infeasible;
      continue;
    }
    row_origin.push_back(ri);
    std_rows.push_back(std::move(sr));
  }

  // Slacks for inequalities; artificials for equalities and for rows whose
  // slack enters with -1 after making the rhs nonnegative.
  const int m = static_cast<int>(std_rows.size());
  std::vector<double> flip(m, 1.0);
  std::vector<double> slack_coef(m, 0.0);
  int num_slack = 0;
  int num_art = 0;
  for (int i = 0; i < m; ++i) {
    const StdRow& r = std_rows[i];
    flip[i] = r.rhs < 0 ? -1.0 : 1.0;
    if (r.relation != Relation::kEqual) {
      ++num_slack;
      slack_coef[i] = (r.relation == Relation::kLessEqual ? 1.0 : -1.0) * flip[i];
    }
    if (slack_coef[i] != 1.0) ++num_art;
  }
  const int first_art = num_struct + num_slack;

  StandardForm sf;
  sf.m = m;
  sf.n = first_art + num_art;
  sf.upper.assign(sf.n, kInfinity);
  std::copy(col_upper.begin(), col_upper.end(), sf.upper.begin());
  sf.rhs.resize(m);
  sf.initial_basis.assign(m, -1);
  sf.unit_col.assign(m, -1);
  {
    std::vector<std::vector<std::pair<int, double>>> cols(sf.n);
    int slack = num_struct;
    int art = first_art;
    for (int i = 0; i < m; ++i) {
      const StdRow& r = std_rows[i];
      for (const Term& term : r.terms) {
        cols[term.var].emplace_back(i, flip[i] * term.coef);
      }
      sf.rhs[i] = flip[i] * r.rhs;
      if (r.relation != Relation::kEqual) {
        cols[slack].emplace_back(i, slack_coef[i]);
        if (slack_coef[i] == 1.0) sf.initial_basis[i] = slack;
        sf.unit_col[i] = slack;
        ++slack;
      }
      if (sf.initial_basis[i] < 0) {
        cols[art].emplace_back(i, 1.0);
        if (sf.unit_col[i] < 0) sf.unit_col[i] = art;
        sf.initial_basis[i] = art++;
      }
    }
    sf.col_start.push_back(0);
    for (auto& c : cols) {
      for (const auto& [row, val] : c) {
        if (val == 0.0) continue;
        sf.col_row.push_back(row);
        sf.col_val.push_back(val);
      }
      sf.col_start.push_back(static_cast<int>(sf.col_row.size()));
    }
  }

  const int max_iterations = options.max_iterations > 0
                                 ? options.max_iterations
                                 : 50 * (m + sf.n) + 10000;
  RevisedSimplex simplex(sf, options, max_iterations);

  double max_rhs = 0.0;
  for (double b : sf.rhs) max_rhs = std::max(max_rhs, b);

  std::vector<double> phase2(sf.n, 0.0);
  std::copy(col_cost.begin(), col_cost.end(), phase2.begin());

  bool started = false;
  if (warm && basis != nullptr && !basis->var.empty()) {
    if (static_cast<int>(basis->var.size()) != nv ||
        static_cast<int>(basis->row.size()) != lp.num_rows()) {
      throw std::invalid_argument("warm-start basis does not fit the LP");
    }
    std::vector<int> basic;
    std::vector<int> at_upper;
    for (int j = 0; j < nv; ++j) {
      const VarMap& vm = map[j];
      if (vm.col < 0) continue;
      const LpBasis::Status st = basis->var[j];
      if (st == LpBasis::kBasic) {
        basic.push_back(vm.col);
      } else if ((st == LpBasis::kAtUpper) == (vm.sign > 0) &&
                 sf.upper[vm.col] != kInfinity) {
        at_upper.push_back(vm.col);
      }
    }
    for (int i = 0; i < m; ++i) {
      if (basis->row[row_origin[i]] == LpBasis::kBasic) {
        basic.push_back(sf.unit_col[i]);
      }
    }
    for (int j = first_art; j < sf.n; ++j) simplex.set_upper(j, 0.0);
    simplex.LoadBasis(basic, at_upper);
    if (simplex.DualInfeasibility(phase2, first_art) >
        1e3 * options.optimality_tol) {
      throw WarmStartFailed();
    }
    if (simplex.DualRun(phase2, first_art, 10 * m + 1000) ==
        LpStatus::kInfeasible) {
      infeasible.iterations = simplex.iterations();
      return infeasible;
    }
    started = true;
  }

  if (!started && num_art > 0) {
    std::vector<double> phase1(sf.n, 0.0);
    for (int j = first_art; j < sf.n; ++j) phase1[j] = 1.0;
    simplex.Run(phase1, sf.n);
    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i) {
      if (simplex.basis()[i] >= first_art) {
        infeasibility += std::abs(simplex.beta()[i]);
      }
    }
    if (infeasibility > tol * (1.0 + max_rhs) * std::max(1, num_art)) {
      infeasible.iterations = simplex.iterations();
      return infeasible;
    }
    // Artificials stay at zero from here on; basic ones are pinned by the
    // ratio test through their zero upper bound.
    for (int j = first_art; j < sf.n; ++j) simplex.set_upper(j, 0.0);
  }

  const LpStatus status = simplex.Run(phase2, first_art);

  std::vector<double> col_value(sf.n, 0.0);
  for (int j = 0; j < sf.n; ++j) {
    if (simplex.state(j) == VarState::kAtUpper) col_value[j] = simplex.upper(j);
  }
  for (int i = 0; i < m; ++i) {
    double v = simplex.beta()[i];
    const int b = simplex.basis()[i];
    // Clamp rounding noise back into the column's box.
    if (v < 0.0 && v > -1e-7 * (1.0 + max_rhs)) v = 0.0;
    const double ub = simplex.upper(b);
    if (ub != kInfinity && v > ub && v < ub + 1e-7 * (1.0 + max_rhs)) v = ub;
    col_value[b] = v;
  }

  LpSolution sol;
  sol.status = status;
  sol.iterations = simplex.iterations();
  sol.x.assign(nv, 0.0);
  for (int j = 0; j < nv; ++j) {
    const VarMap& vm = map[j];
    double v = vm.shift;
    if (vm.col >= 0) v += vm.sign * col_value[vm.col];
    if (vm.neg_col >= 0) v -= col_value[vm.neg_col];
    sol.x[j] = v;
  }
  sol.objective = lp.Objective(sol.x);

  if (basis != nullptr && status == LpStatus::kOptimal) {
    basis->var.assign(nv, LpBasis::kAtLower);
    basis->row.assign(lp.num_rows(), LpBasis::kAtLower);
    for (int j = 0; j < nv; ++j) {
      const VarMap& vm = map[j];
      if (vm.col < 0) continue;
      const VarState st = simplex.state(vm.col);
      if (st == VarState::kBasic ||
          (vm.neg_col >= 0 && simplex.state(vm.neg_col) == VarState::kBasic)) {
        basis->var[j] = LpBasis::kBasic;
      } else if ((st == VarState::kAtUpper) == (vm.sign > 0)) {
        basis->var[j] = LpBasis::kAtUpper;
      }
    }
    for (int i = 0; i < m; ++i) {
      if (simplex.state(sf.unit_col[i]) == VarState::kBasic) {
        basis->row[row_origin[i]] = LpBasis::kBasic;
      }
    }
  }
  return sol;
}

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const LpOptions& options) {
  return SolveLp(lp, options, nullptr);
}

LpSolution SolveLp(const LinearProgram& lp, const LpOptions& options,
                   LpBasis* basis) {
  if (basis != nullptr && !basis->var.empty()) {
    try {
      return SolveOnce(lp, options, basis, /*warm=*/true);
    } catch (const SingularBasis&) {
    } catch (const WarmStartFailed&) {
    } catch (const NumericalError&) {
    }
  }
  try {
    return SolveOnce(lp, options, basis, /*warm=*/false);
  } catch (const SingularBasis&) {
  }
  LpOptions strict = options;
  strict.pivot_tol = std::max(options.pivot_tol, 1e-7);
  try {
    return SolveOnce(lp, strict, basis, /*warm=*/false);
  } catch (const SingularBasis&) {
    throw NumericalError("basis became singular");
  }
}

}  // namespace rrsched
