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

// Compact mixed-integer models of the recoverable robust problem
//
//   min_x max_{p in U} min_{y reachable from x by <= delta swaps} cost(y, p)
//
// obtained by dualizing the adversary. Three variants are available:
//
//   GENERAL(K)  K candidate recoveries z^k mixed by weights mu_k, with the
//               products z^k x and mu_k z^k x linearized into w^k and h^k.
//   MATCHING    swap selection z on pairs i < j, products u = z x_i.,
//               v = z x_j.
//   ASSIGNMENT  symmetric second-stage assignment y, products w = y x.
//
// All indices in the accessors below are 1-based. Variable names follow the
// pattern x[i][l], z[i][j], u[i][j][l], v[i][j][l], y[i][j], w[i][j][l],
// mu[k], z[k][i][i'], w[k][i][i'][j], h[k][i][i'][j] and q[m].

#ifndef RRSCHED_MODELS_H_
#define RRSCHED_MODELS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrsched/instance.h"
#include "rrsched/milp.h"
#include "rrsched/uncertainty.h"

namespace rrsched {

enum class ModelType { kGeneral, kMatching, kAssignment };

struct ModelKind {
  ModelType type = ModelType::kMatching;
  int k = 2;  // candidate recoveries, GENERAL only

  static ModelKind General(int k = 2) { return {ModelType::kGeneral, k}; }
  static ModelKind Matching() { return {ModelType::kMatching, 0}; }
  static ModelKind Assignment() { return {ModelType::kAssignment, 0}; }
};

// "general", "matching" or "assignment".
const char* ToString(ModelType type);
std::optional<ModelType> ParseModelType(std::string_view name);
// Like ToString(type), with "(K=k)" appended for GENERAL.
std::string Label(const ModelKind& kind);

struct ModelOptions {
  // GENERAL only: add equalities implied by multiplying the assignment,
  // symmetry and trace rows of z^k with mu_k. They do not change the set of
  // integer solutions, but make the LP bound exact once x is integral. The
  // upper McCormick rows they imply are left out.
  bool product_equalities = false;
  // GENERAL only: declare w^k binary instead of continuous in [0, 1].
  bool binary_w = false;
};

class CompactModel {
 public:
  const MixedIntegerProgram& mip() const { return mip_; }
  const ModelKind& kind() const { return kind_; }
  int n() const { return n_; }
  int num_scenario_rows() const { return m_; }
  int delta() const { return delta_; }

  int x(int i, int l) const { return x0_ + (i - 1) * n_ + (l - 1); }
  int q(int m) const { return q0_ + (m - 1); }

  // MATCHING, i < j.
  int z(int i, int j) const { return z0_ + Edge(i, j); }
  int u(int i, int j, int l) const { return u0_ + Edge(i, j) * n_ + (l - 1); }
  int v(int i, int j, int l) const { return v0_ + Edge(i, j) * n_ + (l - 1); }

  // ASSIGNMENT.
  int y(int i, int j) const { return y0_ + (i - 1) * n_ + (j - 1); }
  int w(int i, int j, int l) const {
    return w0_ + ((i - 1) * n_ + (j - 1)) * n_ + (l - 1);
  }

  // GENERAL.
  int mu(int k) const { return mu0_ + (k - 1); }
  int zk(int k, int i, int i2) const {
    return z0_ + ((k - 1) * n_ + (i - 1)) * n_ + (i2 - 1);
  }
  int wk(int k, int i, int i2, int j) const { return w0_ + Cube(k, i, i2, j); }
  int h(int k, int i, int i2, int j) const { return h0_ + Cube(k, i, i2, j); }

  // Job order encoded by the x-block of an integral solution.
  Schedule FirstStage(const std::vector<double>& solution) const;

  // A feasible solution with first stage `x` whose objective is the
  // adversarial value of x (for GENERAL with K smaller than the number of
  // recoveries needed, the value without recourse). Values outside the
  // x-block are found by solving linear programs.
  std::vector<double> Complete(const Schedule& x, const Polyhedron& u) const;

 private:
  friend CompactModel BuildModel(const ModelKind&, const Polyhedron&, int,
                                 const ModelOptions&);

  int Edge(int i, int j) const {
    // Row-major position of (i, j), i < j, among the upper-triangle pairs.
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }
  int Cube(int k, int i, int i2, int j) const {
    return (((k - 1) * n_ + (i - 1)) * n_ + (i2 - 1)) * n_ + (j - 1);
  }

  MixedIntegerProgram mip_;
  ModelKind kind_;
  int n_ = 0;
  int m_ = 0;
  int delta_ = 0;
  int x0_ = 0, q0_ = 0, z0_ = 0, u0_ = 0, v0_ = 0, y0_ = 0, w0_ = 0,
      mu0_ = 0, h0_ = 0;
};

// Throws std::invalid_argument for delta < 0, K < 1 or an empty/unbounded U.
CompactModel BuildModel(const ModelKind& kind, const Polyhedron& u, int delta,
                        const ModelOptions& options = {});

// Writes the model in the LP debug format.
void DumpModel(std::ostream& os, const CompactModel& model);

struct RecoverableConfig {
  SolveConfig milp;
  // First-stage schedule used to seed the incumbent (see Complete()).
  std::optional<Schedule> warm_start;
};

struct RecoverableSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  std::optional<Schedule> first_stage;
  double value = kInfinity;   // incumbent objective (upper bound)
  double bound = -kInfinity;  // dual bound
  long nodes = 0;
  double wall_time = 0.0;
  bool warm_start_accepted = false;
  double warm_start_value = kInfinity;
  std::vector<double> solution;  // indexed like `model`
  CompactModel model;
  std::vector<IncumbentEvent> log;
};

// Builds and solves the model. GENERAL is solved with product equalities and
// a primal heuristic that completes every integral x-block via Complete().
RecoverableSolution SolveRecoverable(const ModelKind& kind,
                                     const Polyhedron& u, int delta,
                                     const RecoverableConfig& config = {});

// Objective of the LP relaxation of the model exactly as built by
// BuildModel() with default options.
double LpRelaxationValue(const ModelKind& kind, const Polyhedron& u,
                         int delta);

// Dense n x n matrices, entry (i, j) stored at [i - 1][j - 1].
using Matrix = std::vector<std::vector<double>>;

// A point of the relaxed quadratic matching model: x doubly stochastic,
// z read on the upper triangle (i < j), q >= 0.
struct MatchingPoint {
  Matrix x;
  Matrix z;
  std::vector<double> q;
};

// A point of the relaxed quadratic assignment model.
struct AssignmentPoint {
  Matrix x;
  Matrix y;
  std::vector<double> q;
};

struct SlackReport {
  double min_slack = kInfinity;  // most negative slack over all rows
  std::string row;               // label of the row attaining it
};

// Smallest row slack of the relaxed quadratic models, evaluated by direct
// substitution. Equalities contribute -|residual|.
SlackReport MatchingSlack(const Polyhedron& u, int delta,
                          const MatchingPoint& point);
SlackReport AssignmentSlack(const Polyhedron& u, int delta,
                            const AssignmentPoint& point);

// y_ij = y_ji = z_ij for i < j and y_ii = 1 - sum_{j>i} z_ij - sum_{j<i} z_ji.
// Throws std::invalid_argument naming the violated row when z breaks
// nonnegativity, a degree row or the cardinality row by more than `tol`.
Matrix MatchingToAssignmentMap(const Matrix& z, int delta, double tol = 1e-9);

}  // namespace rrsched

#endif  // RRSCHED_MODELS_H_
