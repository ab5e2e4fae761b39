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

#include "rrsched/models.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "rrsched/subproblems.h"

namespace rrsched {

const char* ToString(ModelType type) {
  switch (type) {
    case ModelType::kGeneral:
      return "general";
    case ModelType::kMatching:
      return "matching";
    case ModelType::kAssignment:
      return "assignment";
  }
  return "?";
}

std::optional<ModelType> ParseModelType(std::string_view name) {
  for (ModelType t :
       {ModelType::kGeneral, ModelType::kMatching, ModelType::kAssignment}) {
    if (name == ToString(t)) return t;
  }
  return std::nullopt;
}

std::string Label(const ModelKind& kind) {
  std::string s = ToString(kind.type);
  if (kind.type == ModelType::kGeneral) {
    s += "(K=" + std::to_string(kind.k) + ")";
  }
  return s;
}

namespace {

std::string Idx(std::initializer_list<int> idx) {
  std::string s;
  for (int i : idx) s += "[" + std::to_string(i) + "]";
  return s;
}

// sum_m a_mi q_m as row terms.
void AddScenarioTerms(const CompactModel& model, const Polyhedron& u, int i,
                      std::vector<Term>& terms) {
  for (int m = 1; m <= u.num_rows(); ++m) {
    const double a = u.a(m - 1, i - 1);
    if (a != 0.0) terms.push_back({model.q(m), a});
  }
}

// sum_i a_mi q_m >= r_i for every job, min b'q: the adversary's linear
// maximum of sum_i r_i p_i over U, in dual form.
LpSolution MinDualCost(const Polyhedron& u, const std::vector<double>& r) {
  LinearProgram lp(Sense::kMinimize);
  for (int m = 0; m < u.num_rows(); ++m) lp.AddVariable(0.0, kInfinity, u.b(m));
  for (int i = 0; i < u.dim(); ++i) {
    std::vector<Term> terms;
    for (int m = 0; m < u.num_rows(); ++m) {
      if (u.a(m, i) != 0.0) terms.push_back({m, u.a(m, i)});
    }
    lp.AddRow(std::move(terms), Relation::kGreaterEqual, r[i]);
  }
  return SolveLp(lp);
}

void RequireOptimal(const LpSolution& sol, const char* what) {
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string(what) + " is " +
                             ToString(sol.status));
  }
}

// Greedy rounding of the x-block: largest entries first, ties by index.
Schedule RoundFirstStage(const CompactModel& model,
                         const std::vector<double>& relax) {
  const int n = model.n();
  std::vector<std::tuple<double, int, int>> entries;
  for (int i = 1; i <= n; ++i) {
    for (int l = 1; l <= n; ++l) {
      entries.emplace_back(-relax[model.x(i, l)], i, l);
    }
  }
  std::sort(entries.begin(), entries.end());
  std::vector<int> jobs(n, 0);
  std::vector<bool> placed(n + 1, false);
  for (const auto& [neg, i, l] : entries) {
    if (placed[i] || jobs[l - 1] != 0) continue;
    placed[i] = true;
    jobs[l - 1] = i;
  }
  return Schedule(std::move(jobs));
}

}  // namespace

CompactModel BuildModel(const ModelKind& kind, const Polyhedron& u, int delta,
                        const ModelOptions& options) {
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  if (kind.type == ModelType::kGeneral && kind.k < 1) {
    throw std::invalid_argument("GENERAL needs K >= 1");
  }
  const CompactnessReport report = ValidateCompact(u);
  if (!report.ok()) {
    throw std::invalid_argument(
        report.kind == CompactnessReport::Kind::kEmpty
            ? "scenario set is empty"
            : "scenario set is unbounded in job " +
                  std::to_string(report.coordinate));
  }

  CompactModel model;
  model.kind_ = kind;
  model.n_ = u.dim();
  model.m_ = u.num_rows();
  model.delta_ = delta;
  const int n = model.n_;
  const int big_m = model.m_;
  LinearProgram& lp = model.mip_.lp;
  std::vector<int>& binaries = model.mip_.binaries;

  model.x0_ = lp.num_vars();
  for (int i = 1; i <= n; ++i) {
    for (int l = 1; l <= n; ++l) {
      binaries.push_back(lp.AddVariable(0.0, 1.0, 0.0, "x" + Idx({i, l})));
    }
  }

  auto add_q = [&] {
    model.q0_ = lp.num_vars();
    for (int m = 1; m <= big_m; ++m) {
      lp.AddVariable(0.0, kInfinity, u.b(m - 1), "q" + Idx({m}));
    }
  };
  auto add_x_rows = [&] {
    for (int l = 1; l <= n; ++l) {
      std::vector<Term> terms;
      for (int i = 1; i <= n; ++i) terms.push_back({model.x(i, l), 1.0});
      lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
    }
    for (int i = 1; i <= n; ++i) {
      std::vector<Term> terms;
      for (int l = 1; l <= n; ++l) terms.push_back({model.x(i, l), 1.0});
      lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
    }
  };
  // prod <= a, prod <= b, prod >= a + b - 1.
  auto add_mccormick = [&](int prod, int a, int b, bool upper_a = true,
                           bool upper_b = true) {
    if (upper_a) lp.AddRow({{prod, 1.0}, {a, -1.0}}, Relation::kLessEqual, 0.0);
    if (upper_b) lp.AddRow({{prod, 1.0}, {b, -1.0}}, Relation::kLessEqual, 0.0);
    lp.AddRow({{prod, 1.0}, {a, -1.0}, {b, -1.0}}, Relation::kGreaterEqual,
              -1.0);
  };

  switch (kind.type) {
    case ModelType::kMatching: {
      model.z0_ = lp.num_vars();
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          lp.AddVariable(0.0, kInfinity, 0.0, "z" + Idx({i, j}));
        }
      }
      model.u0_ = lp.num_vars();
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            lp.AddVariable(0.0, kInfinity, 0.0, "u" + Idx({i, j, l}));
          }
        }
      }
      model.v0_ = lp.num_vars();
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            lp.AddVariable(0.0, kInfinity, 0.0, "v" + Idx({i, j, l}));
          }
        }
      }
      add_q();

      for (int i = 1; i <= n; ++i) {
        std::vector<Term> terms;
        for (int j = 1; j <= n; ++j) {
          if (j > i) terms.push_back({model.z(i, j), 1.0});
          if (j < i) terms.push_back({model.z(j, i), 1.0});
        }
        lp.AddRow(std::move(terms), Relation::kLessEqual, 1.0);
      }
      {
        std::vector<Term> terms;
        for (int i = 1; i <= n; ++i) {
          for (int j = i + 1; j <= n; ++j) terms.push_back({model.z(i, j), 1.0});
        }
        lp.AddRow(std::move(terms), Relation::kLessEqual, delta);
      }
      for (int i = 1; i <= n; ++i) {
        std::vector<Term> terms;
        AddScenarioTerms(model, u, i, terms);
        for (int j = i + 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            terms.push_back({model.v(i, j, l), static_cast<double>(l)});
            terms.push_back({model.u(i, j, l), -static_cast<double>(l)});
          }
        }
        for (int j = 1; j < i; ++j) {
          for (int l = 1; l <= n; ++l) {
            terms.push_back({model.v(j, i, l), -static_cast<double>(l)});
            terms.push_back({model.u(j, i, l), static_cast<double>(l)});
          }
        }
        for (int l = 1; l <= n; ++l) {
          terms.push_back({model.x(i, l), static_cast<double>(l)});
        }
        lp.AddRow(std::move(terms), Relation::kGreaterEqual, n + 1.0);
      }
      add_x_rows();
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            add_mccormick(model.u(i, j, l), model.x(i, l), model.z(i, j));
          }
        }
      }
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            add_mccormick(model.v(i, j, l), model.x(j, l), model.z(i, j));
          }
        }
      }
      break;
    }

    case ModelType::kAssignment: {
      model.y0_ = lp.num_vars();
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          lp.AddVariable(0.0, kInfinity, 0.0, "y" + Idx({i, j}));
        }
      }
      model.w0_ = lp.num_vars();
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            lp.AddVariable(0.0, kInfinity, 0.0, "w" + Idx({i, j, l}));
          }
        }
      }
      add_q();

      for (int j = 1; j <= n; ++j) {
        std::vector<Term> terms;
        for (int i = 1; i <= n; ++i) terms.push_back({model.y(i, j), 1.0});
        lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
      }
      for (int i = 1; i <= n; ++i) {
        std::vector<Term> terms;
        for (int j = 1; j <= n; ++j) terms.push_back({model.y(i, j), 1.0});
        lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
      }
      {
        std::vector<Term> terms;
        for (int i = 1; i <= n; ++i) terms.push_back({model.y(i, i), 1.0});
        lp.AddRow(std::move(terms), Relation::kGreaterEqual, n - 2.0 * delta);
      }
      // y_ij = y_ji, once per unordered pair.
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          lp.AddRow({{model.y(i, j), 1.0}, {model.y(j, i), -1.0}},
                    Relation::kEqual, 0.0);
        }
      }
      for (int i = 1; i <= n; ++i) {
        std::vector<Term> terms;
        AddScenarioTerms(model, u, i, terms);
        for (int j = 1; j <= n; ++j) {
          terms.push_back({model.y(i, j), -(n + 1.0)});
          for (int l = 1; l <= n; ++l) {
            terms.push_back({model.w(i, j, l), static_cast<double>(l)});
          }
        }
        lp.AddRow(std::move(terms), Relation::kGreaterEqual, 0.0);
      }
      add_x_rows();
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          for (int l = 1; l <= n; ++l) {
            add_mccormick(model.w(i, j, l), model.x(j, l), model.y(i, j));
          }
        }
      }
      break;
    }

    case ModelType::kGeneral: {
      const int big_k = kind.k;
      model.mu0_ = lp.num_vars();
      for (int k = 1; k <= big_k; ++k) {
        lp.AddVariable(0.0, kInfinity, 0.0, "mu" + Idx({k}));
      }
      model.z0_ = lp.num_vars();
      for (int k = 1; k <= big_k; ++k) {
        for (int i = 1; i <= n; ++i) {
          for (int i2 = 1; i2 <= n; ++i2) {
            binaries.push_back(
                lp.AddVariable(0.0, 1.0, 0.0, "z" + Idx({k, i, i2})));
          }
        }
      }
      model.w0_ = lp.num_vars();
      for (int k = 1; k <= big_k; ++k) {
        for (int i = 1; i <= n; ++i) {
          for (int i2 = 1; i2 <= n; ++i2) {
            for (int j = 1; j <= n; ++j) {
              const int w =
                  lp.AddVariable(0.0, 1.0, 0.0, "w" + Idx({k, i, i2, j}));
              if (options.binary_w) binaries.push_back(w);
            }
          }
        }
      }
      model.h0_ = lp.num_vars();
      for (int k = 1; k <= big_k; ++k) {
        for (int i = 1; i <= n; ++i) {
          for (int i2 = 1; i2 <= n; ++i2) {
            for (int j = 1; j <= n; ++j) {
              lp.AddVariable(0.0, kInfinity, 0.0, "h" + Idx({k, i, i2, j}));
            }
          }
        }
      }
      add_q();

      {
        std::vector<Term> terms;
        for (int k = 1; k <= big_k; ++k) terms.push_back({model.mu(k), 1.0});
        lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
      }
      for (int i = 1; i <= n; ++i) {
        std::vector<Term> terms;
        AddScenarioTerms(model, u, i, terms);
        for (int k = 1; k <= big_k; ++k) {
          for (int j = 1; j <= n; ++j) {
            for (int i2 = 1; i2 <= n; ++i2) {
              terms.push_back({model.h(k, i, i2, j), -(n + 1.0 - j)});
            }
          }
        }
        lp.AddRow(std::move(terms), Relation::kGreaterEqual, 0.0);
      }
      for (int k = 1; k <= big_k; ++k) {
        for (int i = 1; i <= n; ++i) {
          std::vector<Term> terms;
          for (int i2 = 1; i2 <= n; ++i2) {
            terms.push_back({model.zk(k, i, i2), 1.0});
          }
          lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
        }
        for (int i2 = 1; i2 <= n; ++i2) {
          std::vector<Term> terms;
          for (int i = 1; i <= n; ++i) terms.push_back({model.zk(k, i, i2), 1.0});
          lp.AddRow(std::move(terms), Relation::kEqual, 1.0);
        }
        for (int i = 1; i <= n; ++i) {
          for (int i2 = i + 1; i2 <= n; ++i2) {
            lp.AddRow({{model.zk(k, i, i2), 1.0}, {model.zk(k, i2, i), -1.0}},
                      Relation::kEqual, 0.0);
          }
        }
        std::vector<Term> trace;
        for (int i = 1; i <= n; ++i) trace.push_back({model.zk(k, i, i), 1.0});
        lp.AddRow(std::move(trace), Relation::kGreaterEqual, n - 2.0 * delta);
      }
      add_x_rows();
      // The product equalities below imply w <= z, w <= x and h <= mu.
      const bool upper = !options.product_equalities;
      for (int k = 1; k <= big_k; ++k) {
        for (int i = 1; i <= n; ++i) {
          for (int i2 = 1; i2 <= n; ++i2) {
            for (int j = 1; j <= n; ++j) {
              add_mccormick(model.wk(k, i, i2, j), model.zk(k, i, i2),
                            model.x(i2, j), upper, upper);
            }
          }
        }
      }
      for (int k = 1; k <= big_k; ++k) {
        for (int i = 1; i <= n; ++i) {
          for (int i2 = 1; i2 <= n; ++i2) {
            for (int j = 1; j <= n; ++j) {
              add_mccormick(model.h(k, i, i2, j), model.wk(k, i, i2, j),
                            model.mu(k), true, upper);
            }
          }
        }
      }

      if (options.product_equalities) {
        for (int k = 1; k <= big_k; ++k) {
          // w^k = z^k x: summing out the position or the job.
          for (int i = 1; i <= n; ++i) {
            for (int i2 = 1; i2 <= n; ++i2) {
              std::vector<Term> terms{{model.zk(k, i, i2), -1.0}};
              for (int j = 1; j <= n; ++j) {
                terms.push_back({model.wk(k, i, i2, j), 1.0});
              }
              lp.AddRow(std::move(terms), Relation::kEqual, 0.0);
            }
          }
          for (int i2 = 1; i2 <= n; ++i2) {
            for (int j = 1; j <= n; ++j) {
              std::vector<Term> terms{{model.x(i2, j), -1.0}};
              for (int i = 1; i <= n; ++i) {
                terms.push_back({model.wk(k, i, i2, j), 1.0});
              }
              lp.AddRow(std::move(terms), Relation::kEqual, 0.0);
            }
          }
          // G_ii' = sum_j h^k_ii'j equals mu_k z^k_ii': rows and columns of
          // G sum to mu_k, G is symmetric and its trace is large enough.
          for (int i = 1; i <= n; ++i) {
            std::vector<Term> row{{model.mu(k), -1.0}};
            std::vector<Term> col{{model.mu(k), -1.0}};
            for (int i2 = 1; i2 <= n; ++i2) {
              for (int j = 1; j <= n; ++j) {
                row.push_back({model.h(k, i, i2, j), 1.0});
                col.push_back({model.h(k, i2, i, j), 1.0});
              }
            }
            lp.AddRow(std::move(row), Relation::kEqual, 0.0);
            lp.AddRow(std::move(col), Relation::kEqual, 0.0);
          }
          for (int i = 1; i <= n; ++i) {
            for (int i2 = i + 1; i2 <= n; ++i2) {
              std::vector<Term> terms;
              for (int j = 1; j <= n; ++j) {
                terms.push_back({model.h(k, i, i2, j), 1.0});
                terms.push_back({model.h(k, i2, i, j), -1.0});
              }
              lp.AddRow(std::move(terms), Relation::kEqual, 0.0);
            }
          }
          std::vector<Term> trace{{model.mu(k), -(n - 2.0 * delta)}};
          for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
              trace.push_back({model.h(k, i, i, j), 1.0});
            }
          }
          lp.AddRow(std::move(trace), Relation::kGreaterEqual, 0.0);
        }
        // sum_k sum_i h^k_ii'j = x_i'j.
        for (int i2 = 1; i2 <= n; ++i2) {
          for (int j = 1; j <= n; ++j) {
            std::vector<Term> terms{{model.x(i2, j), -1.0}};
            for (int k = 1; k <= big_k; ++k) {
              for (int i = 1; i <= n; ++i) {
                terms.push_back({model.h(k, i, i2, j), 1.0});
              }
            }
            lp.AddRow(std::move(terms), Relation::kEqual, 0.0);
          }
        }
      }
      break;
    }
  }
  if (kind.type == ModelType::kGeneral && options.product_equalities) {
    // The bound is exact once x is integral, so only x needs branching.
    model.mip_.priority.assign(binaries.size(), 0);
    for (int b = 0; b < n * n; ++b) model.mip_.priority[b] = 1;
  }
  return model;
}

Schedule CompactModel::FirstStage(const std::vector<double>& solution) const {
  std::vector<int> jobs(n_, 0);
  for (int l = 1; l <= n_; ++l) {
    for (int i = 1; i <= n_; ++i) {
      if (solution[x(i, l)] > 0.5) {
        if (jobs[l - 1] != 0) {
          throw std::invalid_argument("x-block is not a permutation");
        }
        jobs[l - 1] = i;
      }
    }
  }
  return Schedule(std::move(jobs));
}

std::vector<double> CompactModel::Complete(const Schedule& s,
                                           const Polyhedron& u) const {
  if (s.size() != n_ || u.dim() != n_ || u.num_rows() != m_) {
    throw std::invalid_argument("schedule or scenario set does not fit model");
  }
  const int n = n_;
  if (kind_.type != ModelType::kGeneral) {
    LinearProgram lp = mip_.lp;
    for (int i = 1; i <= n; ++i) {
      for (int l = 1; l <= n; ++l) {
        const double v = s.position_of(i) == l ? 1.0 : 0.0;
        lp.SetBounds(x(i, l), v, v);
      }
    }
    LpSolution sol = SolveLp(lp);
    RequireOptimal(sol, "completion LP");
    return std::move(sol.x);
  }

  // Recoveries are generated by pricing with the incremental LP until the
  // restricted adversary cannot improve; the restricted master then mixes
  // at most n + 1 of them.
  std::vector<Schedule> recoveries{s};
  auto row_of = [n](const Schedule& y, int i) {
    return n + 1.0 - y.position_of(i);
  };
  for (int round = 0; delta_ > 0 && round < 10000; ++round) {
    LinearProgram adv(Sense::kMaximize);
    for (int i = 0; i < n; ++i) adv.AddVariable(0.0, kInfinity, 0.0);
    const int t = adv.AddVariable(-kInfinity, kInfinity, 1.0);
    for (const Schedule& y : recoveries) {
      std::vector<Term> terms{{t, 1.0}};
      for (int i = 1; i <= n; ++i) terms.push_back({i - 1, -row_of(y, i)});
      adv.AddRow(std::move(terms), Relation::kLessEqual, 0.0);
    }
    for (const Halfspace& h : u.rows()) {
      std::vector<Term> terms;
      for (int i = 0; i < n; ++i) {
        if (h.a[i] != 0.0) terms.push_back({i, h.a[i]});
      }
      adv.AddRow(std::move(terms), Relation::kLessEqual, h.b);
    }
    const LpSolution a = SolveLp(adv);
    RequireOptimal(a, "restricted adversarial LP");
    const Scenario p(a.x.begin(), a.x.begin() + n);
    IncrementalResult best = IncrementalMatching(s, p, delta_);
    if (best.value >= a.objective - 1e-9 * (1.0 + std::abs(a.objective))) {
      break;
    }
    if (std::find(recoveries.begin(), recoveries.end(), best.second_stage) !=
        recoveries.end()) {
      break;
    }
    recoveries.push_back(std::move(best.second_stage));
  }

  const int r = static_cast<int>(recoveries.size());
  LinearProgram master(Sense::kMinimize);
  for (int j = 0; j < r; ++j) master.AddVariable(0.0, kInfinity, 0.0);
  for (int m = 0; m < m_; ++m) master.AddVariable(0.0, kInfinity, u.b(m));
  for (int i = 1; i <= n; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < r; ++j) terms.push_back({j, -row_of(recoveries[j], i)});
    for (int m = 0; m < m_; ++m) {
      if (u.a(m, i - 1) != 0.0) terms.push_back({r + m, u.a(m, i - 1)});
    }
    master.AddRow(std::move(terms), Relation::kGreaterEqual, 0.0);
  }
  {
    std::vector<Term> terms;
    for (int j = 0; j < r; ++j) terms.push_back({j, 1.0});
    master.AddRow(std::move(terms), Relation::kEqual, 1.0);
  }
  LpSolution ms = SolveLp(master);
  RequireOptimal(ms, "recovery master LP");

  std::vector<std::pair<int, double>> mix;
  for (int j = 0; j < r; ++j) {
    if (ms.x[j] > 1e-12) mix.emplace_back(j, ms.x[j]);
  }
  std::vector<double> q(ms.x.begin() + r, ms.x.end());
  if (static_cast<int>(mix.size()) > kind_.k) {
    // Not enough candidates: fall back to no recourse.
    mix.assign(1, {0, 1.0});
    std::vector<double> rhs(n);
    for (int i = 1; i <= n; ++i) rhs[i - 1] = row_of(s, i);
    const LpSolution d = MinDualCost(u, rhs);
    RequireOptimal(d, "dual cost LP");
    q = d.x;
  }
  double total = 0.0;
  for (const auto& [j, weight] : mix) total += weight;

  std::vector<double> sol(mip_.lp.num_vars(), 0.0);
  for (int i = 1; i <= n; ++i) sol[x(i, s.position_of(i))] = 1.0;
  for (int m = 1; m <= m_; ++m) sol[this->q(m)] = q[m - 1];
  for (int k = 1; k <= kind_.k; ++k) {
    const bool used = k <= static_cast<int>(mix.size());
    const Schedule& y = used ? recoveries[mix[k - 1].first] : s;
    const double weight = used ? mix[k - 1].second / total : 0.0;
    sol[mu(k)] = weight;
    for (int i = 1; i <= n; ++i) {
      // Job i takes the first-stage slot of job i2.
      const int i2 = s.job_at(y.position_of(i));
      sol[zk(k, i, i2)] = 1.0;
      const int j = s.position_of(i2);
      sol[wk(k, i, i2, j)] = 1.0;
      sol[h(k, i, i2, j)] = weight;
    }
  }
  return sol;
}

void DumpModel(std::ostream& os, const CompactModel& model) {
  os << "# " << Label(model.kind()) << " n=" << model.n()
     << " delta=" << model.delta() << "\n";
  model.mip().lp.Dump(os);
  os << "binary";
  for (int j : model.mip().binaries) os << " " << j;
  os << "\n";
}

RecoverableSolution SolveRecoverable(const ModelKind& kind,
                                     const Polyhedron& u, int delta,
                                     const RecoverableConfig& config) {
  ModelOptions options;
  options.product_equalities = kind.type == ModelType::kGeneral;
  RecoverableSolution out;
  out.model = BuildModel(kind, u, delta, options);
  const CompactModel& model = out.model;

  SolveConfig cfg = config.milp;
  if (config.warm_start) {
    std::vector<double> start = model.Complete(*config.warm_start, u);
    out.warm_start_value = model.mip().lp.Objective(start);
    cfg.warm_start = WarmStart{std::move(start), out.warm_start_value};
  }
  std::set<std::vector<int>> completed;
  if (kind.type == ModelType::kGeneral) {
    cfg.primal_heuristic = [&](const std::vector<double>& relax)
        -> std::optional<std::vector<double>> {
      const Schedule s = RoundFirstStage(model, relax);
      if (!completed.insert(s.jobs()).second) return std::nullopt;
      return model.Complete(s, u);
    };
  }

  const MilpSolution milp = SolveMilp(model.mip(), cfg);
  out.status = milp.status;
  out.value = milp.ub;
  out.bound = milp.lb;
  out.nodes = milp.nodes;
  out.wall_time = milp.wall_time;
  out.warm_start_accepted = milp.warm_start_accepted;
  out.log = milp.log;
  if (milp.incumbent) {
    out.solution = *milp.incumbent;
    out.first_stage = model.FirstStage(out.solution);
  }
  return out;
}

double LpRelaxationValue(const ModelKind& kind, const Polyhedron& u,
                         int delta) {
  const CompactModel model = BuildModel(kind, u, delta);
  const LpSolution sol = SolveLp(model.mip().lp);
  RequireOptimal(sol, "LP relaxation");
  return sol.objective;
}

namespace {

void Note(SlackReport& r, double slack, const std::string& row) {
  if (slack < r.min_slack) {
    r.min_slack = slack;
    r.row = row;
  }
}

std::vector<double> Positions(const Matrix& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> pos(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) pos[i] += (l + 1) * x[i][l];
  }
  return pos;
}

void CheckShapes(const Polyhedron& u, const Matrix& x, const Matrix& y,
                 const std::vector<double>& q) {
  const int n = u.dim();
  auto square = [n](const Matrix& mtx) {
    if (static_cast<int>(mtx.size()) != n) return false;
    for (const auto& row : mtx) {
      if (static_cast<int>(row.size()) != n) return false;
    }
    return true;
  };
  if (!square(x) || !square(y) ||
      static_cast<int>(q.size()) != u.num_rows()) {
    throw std::invalid_argument("point does not match the scenario set");
  }
}

void CommonRows(const Polyhedron& u, const Matrix& x,
                const std::vector<double>& q, SlackReport& r) {
  const int n = u.dim();
  for (int l = 0; l < n; ++l) {
    double col = 0.0, row = 0.0;
    for (int i = 0; i < n; ++i) {
      col += x[i][l];
      row += x[l][i];
      Note(r, x[i][l], "x" + Idx({i + 1, l + 1}) + ">=0");
    }
    Note(r, -std::abs(col - 1.0), "sum_i x[i]" + Idx({l + 1}) + "=1");
    Note(r, -std::abs(row - 1.0), "sum_l x" + Idx({l + 1}) + "[l]=1");
  }
  for (int m = 0; m < u.num_rows(); ++m) Note(r, q[m], "q" + Idx({m + 1}) + ">=0");
}

double ScenarioTerm(const Polyhedron& u, const std::vector<double>& q, int i) {
  double s = 0.0;
  for (int m = 0; m < u.num_rows(); ++m) s += u.a(m, i) * q[m];
  return s;
}

}  // namespace

SlackReport MatchingSlack(const Polyhedron& u, int delta,
                          const MatchingPoint& pt) {
  CheckShapes(u, pt.x, pt.z, pt.q);
  const int n = u.dim();
  SlackReport r;
  CommonRows(u, pt.x, pt.q, r);
  const std::vector<double> pos = Positions(pt.x);
  double card = 0.0;
  for (int i = 0; i < n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j > i) {
        degree += pt.z[i][j];
        card += pt.z[i][j];
        Note(r, pt.z[i][j], "z" + Idx({i + 1, j + 1}) + ">=0");
      } else if (j < i) {
        degree += pt.z[j][i];
      }
    }
    Note(r, 1.0 - degree, "degree" + Idx({i + 1}));
  }
  Note(r, delta - card, "cardinality");
  for (int i = 0; i < n; ++i) {
    double lhs = ScenarioTerm(u, pt.q, i);
    for (int j = i + 1; j < n; ++j) lhs += (pos[j] - pos[i]) * pt.z[i][j];
    for (int j = 0; j < i; ++j) lhs -= (pos[i] - pos[j]) * pt.z[j][i];
    Note(r, lhs - (n + 1.0 - pos[i]), "dual" + Idx({i + 1}));
  }
  return r;
}

SlackReport AssignmentSlack(const Polyhedron& u, int delta,
                            const AssignmentPoint& pt) {
  CheckShapes(u, pt.x, pt.y, pt.q);
  const int n = u.dim();
  SlackReport r;
  CommonRows(u, pt.x, pt.q, r);
  const std::vector<double> pos = Positions(pt.x);
  double trace = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      row += pt.y[i][j];
      col += pt.y[j][i];
      Note(r, pt.y[i][j], "y" + Idx({i + 1, j + 1}) + ">=0");
      if (j > i) {
        Note(r, -std::abs(pt.y[i][j] - pt.y[j][i]),
             "y" + Idx({i + 1, j + 1}) + "=y" + Idx({j + 1, i + 1}));
      }
    }
    trace += pt.y[i][i];
    Note(r, -std::abs(row - 1.0), "sum_j y" + Idx({i + 1}) + "[j]=1");
    Note(r, -std::abs(col - 1.0), "sum_i y[i]" + Idx({i + 1}) + "=1");
  }
  Note(r, trace - (n - 2.0 * delta), "trace");
  for (int i = 0; i < n; ++i) {
    double rhs = 0.0;
    for (int j = 0; j < n; ++j) rhs += (n + 1.0 - pos[j]) * pt.y[i][j];
    Note(r, ScenarioTerm(u, pt.q, i) - rhs, "dual" + Idx({i + 1}));
  }
  return r;
}

Matrix MatchingToAssignmentMap(const Matrix& z, int delta, double tol) {
  const int n = static_cast<int>(z.size());
  for (const auto& row : z) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("z must be square");
    }
  }
  double card = 0.0;
  Matrix y(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j > i) {
        if (z[i][j] < -tol) {
          throw std::invalid_argument("violated row z" + Idx({i + 1, j + 1}) +
                                      ">=0");
        }
        degree += z[i][j];
        card += z[i][j];
        y[i][j] = y[j][i] = z[i][j];
      } else if (j < i) {
        degree += z[j][i];
      }
    }
    if (degree > 1.0 + tol) {
      throw std::invalid_argument("violated row degree" + Idx({i + 1}));
    }
    y[i][i] = 1.0 - degree;
  }
  if (card > delta + tol) {
    throw std::invalid_argument("violated row cardinality");
  }
  return y;
}

}  // namespace rrsched
