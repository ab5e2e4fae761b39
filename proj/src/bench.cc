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


#include "rrsched/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "rrsched/heuristics.h"
#include "rrsched/io.h"
#include "rrsched/uncertainty.h"

namespace rrsched {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Percent gaps below this are solver round-off.
constexpr double kGapNoise = 1e-7;

}  // namespace

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) {
  inc_ = (stream << 1u) | 1u;
  Next();
  state_ += seed;
  Next();
}

std::uint32_t Pcg32::Next() {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  const auto xorshifted =
      static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint32_t Pcg32::Uniform(std::uint32_t lo, std::uint32_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint32_t bound = hi - lo + 1u;
  if (bound == 0u) return Next();  // full 32-bit range
  const std::uint32_t threshold = (0u - bound) % bound;
  while (true) {
    const std::uint32_t r = Next();
    if (r >= threshold) return lo + r % bound;
  }
}

std::vector<Instance> GenerateInstances(std::uint64_t seed, int n,
                                        int count) {
  if (n < 1 || count < 1) {
    throw std::invalid_argument("n and count must be positive");
  }
  std::vector<Instance> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Pcg32 rng(seed, (static_cast<std::uint64_t>(n) << 32) +
                        static_cast<std::uint64_t>(k));
    std::vector<double> nominal(n), deviation(n);
    for (double& v : nominal) v = rng.Uniform(1, 100);
    for (double& v : deviation) v = rng.Uniform(1, 100);
    out.emplace_back("n" + std::to_string(n) + "_s" + std::to_string(seed) +
                         "_" + std::to_string(k + 1),
                     std::move(nominal), std::move(deviation));
  }
  return out;
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.instances.empty() &&
      (config.sizes.empty() || config.instances_per_cell < 1)) {
    throw std::invalid_argument("need sizes and a positive instance count");
  }
  for (int n : config.sizes) {
    if (n < 1) throw std::invalid_argument("sizes must be positive");
  }
  if (config.gammas.empty() || config.deltas.empty()) {
    throw std::invalid_argument("gammas and deltas must be nonempty");
  }
  for (double g : config.gammas) {
    if (!(g >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  }
  for (int d : config.deltas) {
    if (d < 0) throw std::invalid_argument("delta must be >= 0");
  }
  if (config.models.empty() && !config.heuristics) {
    throw std::invalid_argument("nothing to run");
  }
  for (const ModelSpec& m : config.models) {
    if (m.kind.type == ModelType::kGeneral && m.kind.k < 1) {
      throw std::invalid_argument("GENERAL needs K >= 1");
    }
  }
  if (!(config.time_limit > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
}

double LbGap(double lb, double best_known) {
  if (!std::isfinite(best_known) || best_known == 0.0 || std::isnan(lb)) {
    return kNaN;
  }
  const double gap = (best_known - lb) / std::abs(best_known) * 100.0;
  return gap < kGapNoise ? 0.0 : gap;
}

double UbGap(double ub, double best_known) {
  if (!std::isfinite(best_known) || best_known == 0.0 || std::isnan(ub)) {
    return kNaN;
  }
  const double gap = (ub - best_known) / std::abs(best_known) * 100.0;
  return gap < kGapNoise ? 0.0 : gap;
}

void AssignBestKnown(std::vector<ResultRecord>& records) {
  using Key = std::tuple<std::string, double, int>;
  std::map<Key, double> best;
  for (const ResultRecord& r : records) {
    const Key key{r.instance, r.gamma, r.delta};
    auto [it, inserted] = best.emplace(key, kInfinity);
    if (std::isfinite(r.ub)) it->second = std::min(it->second, r.ub);
  }
  for (ResultRecord& r : records) {
    r.best_known = best[{r.instance, r.gamma, r.delta}];
    if (!std::isfinite(r.best_known)) r.best_known = kNaN;
    r.ubgap_pct = UbGap(r.ub, r.best_known);
    r.lbgap_pct = r.status == kStatusHeuristic ? kNaN
                                               : LbGap(r.lb, r.best_known);
  }
}

std::vector<ResultRecord> RunExperiment(const ExperimentConfig& config,
                                        const RecordCallback& progress) {
  ValidateConfig(config);
  std::vector<Instance> instances = config.instances;
  if (instances.empty()) {
    for (int n : config.sizes) {
      std::vector<Instance> batch =
          GenerateInstances(config.seed, n, config.instances_per_cell);
      instances.insert(instances.end(), batch.begin(), batch.end());
    }
  }
  const bool need_minmax =
      config.heuristics ||
      std::any_of(config.models.begin(), config.models.end(),
                  [](const ModelSpec& m) { return m.warm_start; });
  SolveConfig milp;
  milp.time_limit = config.time_limit;

  std::vector<ResultRecord> records;
  for (const Instance& inst : instances) {
    for (double gamma : config.gammas) {
      const Polyhedron u = BudgetedPolyhedron(inst, gamma);
      for (int delta : config.deltas) {
        ResultRecord base;
        base.instance = inst.id();
        base.n = inst.size();
        base.gamma = gamma;
        base.delta = delta;
        auto emit = [&](ResultRecord r) {
          if (progress) progress(r);
          records.push_back(std::move(r));
        };
        auto heuristic_record = [&](HeuristicMethod method, auto&& run) {
          ResultRecord r = base;
          r.model = ToString(method);
          const auto start = std::chrono::steady_clock::now();
          try {
            const HeuristicResult h = run();
            r.status = kStatusHeuristic;
            r.time_s = h.wall_time;
            r.ub = h.value;
            r.lb = kNaN;
            return std::make_pair(r, std::optional<Schedule>(h.schedule));
          } catch (const std::exception& e) {
            r.status = kStatusError;
            r.message = e.what();
            r.time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
            r.ub = r.lb = kNaN;
            return std::make_pair(r, std::optional<Schedule>());
          }
        };

        std::optional<Schedule> warm;
        if (need_minmax) {
          auto [r, s] = heuristic_record(HeuristicMethod::kMinMax, [&] {
            return MinMaxHeuristic(u, delta, milp);
          });
          warm = s;
          if (config.heuristics) emit(std::move(r));
        }
        if (config.heuristics) {
          emit(heuristic_record(HeuristicMethod::kSorting, [&] {
                 return SortingHeuristic(inst, u, delta);
               }).first);
          emit(heuristic_record(HeuristicMethod::kMaxMin, [&] {
                 return MaxMinHeuristic(u, delta);
               }).first);
        }

        for (const ModelSpec& spec : config.models) {
          ResultRecord r = base;
          r.model = Label(spec.kind);
          r.warm_start = spec.warm_start;
          RecoverableConfig rc;
          rc.milp = milp;
          if (spec.warm_start) rc.warm_start = warm;
          const auto start = std::chrono::steady_clock::now();
          try {
            const RecoverableSolution sol =
                SolveRecoverable(spec.kind, u, delta, rc);
            r.status = ToString(sol.status);
            r.time_s = sol.wall_time;
            r.ub = sol.value;
            r.lb = sol.bound;
            if (spec.warm_start && !warm) {
              r.message = "no warm start available";
            }
          } catch (const std::exception& e) {
            r.status = kStatusError;
            r.message = e.what();
            r.time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
            r.ub = r.lb = kNaN;
          }
          emit(std::move(r));
        }
      }
    }
  }
  AssignBestKnown(records);
  return records;
}

namespace {

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  int count = 0;
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    sum += x;
    ++count;
  }
  return count == 0 ? kNaN : sum / count;
}

std::string Tag(const ResultRecord& r) {
  return r.warm_start ? r.model + "+ws" : r.model;
}

}  // namespace

std::vector<SummaryRow> Summarize(const std::vector<ResultRecord>& records,
                                  GroupBy by) {
  using Key = std::tuple<int, double, std::string, bool>;
  struct Acc {
    int runs = 0;
    int solved = 0;
    std::vector<double> times, lbgaps, ubgaps;
  };
  std::map<Key, Acc> acc;
  // Best known value per (n, key) cell and problem instance.
  std::map<std::pair<int, double>,
           std::map<std::tuple<std::string, double, int>, double>>
      best;
  for (const ResultRecord& r : records) {
    const double key = by == GroupBy::kGamma ? r.gamma : r.delta;
    best[{r.n, key}][{r.instance, r.gamma, r.delta}] = r.best_known;
    if (r.status == kStatusHeuristic) continue;
    Acc& a = acc[{r.n, key, r.model, r.warm_start}];
    ++a.runs;
    if (r.solved()) {
      ++a.solved;
      a.times.push_back(r.time_s);
    } else {
      a.lbgaps.push_back(r.lbgap_pct);
      a.ubgaps.push_back(r.ubgap_pct);
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, a] : acc) {
    SummaryRow row;
    row.n = std::get<0>(key);
    row.key = std::get<1>(key);
    row.model = std::get<2>(key);
    row.warm_start = std::get<3>(key);
    row.runs = a.runs;
    row.solved = a.solved;
    row.time = Mean(a.times);
    row.lbgap = Mean(a.lbgaps);
    row.ubgap = Mean(a.ubgaps);
    std::vector<double> values;
    for (const auto& [cell, v] : best[{row.n, row.key}]) values.push_back(v);
    row.avg_best = Mean(values);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ProfilePoint> PerformanceProfile(
    const std::map<std::string, std::vector<std::optional<double>>>& times) {
  if (times.empty()) throw std::invalid_argument("no models to profile");
  const std::size_t count = times.begin()->second.size();
  if (count == 0) throw std::invalid_argument("no instances to profile");
  for (const auto& [model, t] : times) {
    if (t.size() != count) {
      throw std::invalid_argument("model " + model +
                                  " has a different instance count");
    }
    for (const std::optional<double>& v : t) {
      if (v && !(*v >= 0.0)) {
        throw std::invalid_argument("negative or NaN solve time");
      }
    }
  }
  // Zero times are floored so that ratios stay finite.
  constexpr double kMinTime = 1e-9;
  std::map<std::string, std::vector<std::optional<double>>> ratio;
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double best = kInfinity;
    for (const auto& [model, t] : times) {
      if (t[i]) best = std::min(best, std::max(*t[i], kMinTime));
    }
    for (const auto& [model, t] : times) {
      std::optional<double> r;
      if (t[i]) {
        r = std::max(*t[i], kMinTime) / best;
        max_ratio = std::max(max_ratio, *r);
      }
      ratio[model].push_back(r);
    }
  }
  const double big_p = max_ratio > 0.0 ? 2.0 * max_ratio : 2.0;
  std::set<double> taus;
  std::map<std::string, std::vector<double>> resolved;
  for (const auto& [model, rs] : ratio) {
    std::vector<double>& v = resolved[model];
    for (const std::optional<double>& r : rs) v.push_back(r ? *r : big_p);
    taus.insert(v.begin(), v.end());
  }
  std::vector<ProfilePoint> points;
  for (double tau : taus) {
    for (const auto& [model, v] : resolved) {
      const auto hits = std::count_if(v.begin(), v.end(),
                                      [tau](double r) { return r <= tau; });
      points.push_back(
          {model, tau, static_cast<double>(hits) / static_cast<double>(count)});
    }
  }
  return points;
}

std::vector<ProfilePoint> PerformanceProfile(
    const std::vector<ResultRecord>& records) {
  using Cell = std::tuple<std::string, double, int>;
  std::set<Cell> cells;
  std::map<std::string, std::map<Cell, std::optional<double>>> by_model;
  for (const ResultRecord& r : records) {
    if (r.status == kStatusHeuristic) continue;
    const Cell cell{r.instance, r.gamma, r.delta};
    cells.insert(cell);
    auto [it, inserted] = by_model[Tag(r)].emplace(
        cell, r.solved() ? std::optional<double>(r.time_s) : std::nullopt);
    if (!inserted) {
      throw std::invalid_argument("duplicate record for model " + Tag(r) +
                                  " on " + r.instance);
    }
  }
  std::map<std::string, std::vector<std::optional<double>>> times;
  for (const auto& [model, m] : by_model) {
    for (const Cell& cell : cells) {
      auto it = m.find(cell);
      if (it == m.end()) {
        throw std::invalid_argument("model " + model + " has no record for " +
                                    std::get<0>(cell));
      }
      times[model].push_back(it->second);
    }
  }
  return PerformanceProfile(times);
}

std::optional<OutputFormat> ParseOutputFormat(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "md") return OutputFormat::kMarkdown;
  if (name == "json") return OutputFormat::kJson;
  return std::nullopt;
}

namespace {

constexpr const char* kRecordHeader =
    "instance,model,warm_start,n,gamma,delta,status,time_s,ub,lb,lbgap_pct,"
    "ubgap_pct,best_known";

std::string Num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Fixed-point for tables; "-" for missing values.
std::string Fixed(double v, int digits) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double ParseNum(const std::string& cell, int line) {
  if (cell.empty()) return kNaN;
  if (cell == "inf") return kInfinity;
  if (cell == "-inf") return -kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != cell.size()) {
    throw FormatError("line " + std::to_string(line) + ": bad number \"" +
                      cell + "\"");
  }
  return v;
}

nlohmann::json JsonNum(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

void WriteRecordsCsv(std::ostream& os, const std::vector<ResultRecord>& r) {
  os << kRecordHeader << "\n";
  for (const ResultRecord& x : r) {
    os << x.instance << "," << x.model << "," << (x.warm_start ? 1 : 0) << ","
       << x.n << "," << Num(x.gamma) << "," << x.delta << "," << x.status
       << "," << Num(x.time_s) << "," << Num(x.ub) << "," << Num(x.lb) << ","
       << Num(x.lbgap_pct) << "," << Num(x.ubgap_pct) << ","
       << Num(x.best_known) << "\n";
  }
}

std::vector<ResultRecord> ReadRecordsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty results CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw FormatError("unexpected results header");
  std::vector<ResultRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 13) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": expected 13 cells");
    }
    ResultRecord r;
    r.instance = cells[0];
    r.model = cells[1];
    if (cells[2] != "0" && cells[2] != "1") {
      throw FormatError("line " + std::to_string(line_no) +
                        ": warm_start must be 0 or 1");
    }
    r.warm_start = cells[2] == "1";
    r.n = static_cast<int>(ParseNum(cells[3], line_no));
    r.gamma = ParseNum(cells[4], line_no);
    r.delta = static_cast<int>(ParseNum(cells[5], line_no));
    r.status = cells[6];
    r.time_s = ParseNum(cells[7], line_no);
    r.ub = ParseNum(cells[8], line_no);
    r.lb = ParseNum(cells[9], line_no);
    r.lbgap_pct = ParseNum(cells[10], line_no);
    r.ubgap_pct = ParseNum(cells[11], line_no);
    r.best_known = ParseNum(cells[12], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

void WriteRecords(std::ostream& os, const std::vector<ResultRecord>& r,
                  OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      WriteRecordsCsv(os, r);
      return;
    case OutputFormat::kMarkdown:
      os << "| instance | model | ws | n | gamma | delta | status | time_s | "
            "ub | lb | LBgap | UBgap | best_known |\n"
         << "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
      for (const ResultRecord& x : r) {
        os << "| " << x.instance << " | " << x.model << " | "
           << (x.warm_start ? "yes" : "no") << " | " << x.n << " | "
           << Num(x.gamma) << " | " << x.delta << " | " << x.status << " | "
           << Fixed(x.time_s, 2) << " | " << Fixed(x.ub, 2) << " | "
           << Fixed(x.lb, 2) << " | " << Fixed(x.lbgap_pct, 2) << " | "
           << Fixed(x.ubgap_pct, 2) << " | " << Fixed(x.best_known, 2)
           << " |\n";
      }
      return;
    case OutputFormat::kJson: {
      nlohmann::json j = nlohmann::json::array();
      for (const ResultRecord& x : r) {
        nlohmann::json e{{"instance", x.instance},
                         {"model", x.model},
                         {"warm_start", x.warm_start},
                         {"n", x.n},
                         {"gamma", JsonNum(x.gamma)},
                         {"delta", x.delta},
                         {"status", x.status},
                         {"time_s", JsonNum(x.time_s)},
                         {"ub", JsonNum(x.ub)},
                         {"lb", JsonNum(x.lb)},
                         {"lbgap_pct", JsonNum(x.lbgap_pct)},
                         {"ubgap_pct", JsonNum(x.ubgap_pct)},
                         {"best_known", JsonNum(x.best_known)}};
        if (!x.message.empty()) e["message"] = x.message;
        j.push_back(std::move(e));
      }
      os << j.dump(2) << "\n";
      return;
    }
  }
}

void WriteSummary(std::ostream& os, const std::vector<SummaryRow>& rows,
                  GroupBy by, OutputFormat format) {
  const char* key = by == GroupBy::kGamma ? "gamma" : "delta";
  switch (format) {
    case OutputFormat::kCsv:
      os << "n," << key
         << ",model,warm_start,runs,time,lbgap,ubgap,solved,avg_best\n";
      for (const SummaryRow& r : rows) {
        os << r.n << "," << Num(r.key) << "," << r.model << ","
           << (r.warm_start ? 1 : 0) << "," << r.runs << "," << Num(r.time)
           << "," << Num(r.lbgap) << "," << Num(r.ubgap) << "," << r.solved
           << "," << Num(r.avg_best) << "\n";
      }
      return;
    case OutputFormat::kMarkdown:
      os << "| n | " << (by == GroupBy::kGamma ? "Γ" : "Δ")
         << " | model | time | LBgap | UBgap | #solv | avg. best |\n"
         << "|---|---|---|---|---|---|---|---|\n";
      for (const SummaryRow& r : rows) {
        os << "| " << r.n << " | " << Num(r.key) << " | " << r.model
           << (r.warm_start ? " (ws)" : "") << " | " << Fixed(r.time, 1)
           << " | " << Fixed(r.lbgap, 1) << " | " << Fixed(r.ubgap, 1)
           << " | " << r.solved << " | " << Fixed(r.avg_best, 1) << " |\n";
      }
      return;
    case OutputFormat::kJson: {
      nlohmann::json j = nlohmann::json::array();
      for (const SummaryRow& r : rows) {
        j.push_back({{"n", r.n},
                     {key, JsonNum(r.key)},
                     {"model", r.model},
                     {"warm_start", r.warm_start},
                     {"runs", r.runs},
                     {"time", JsonNum(r.time)},
                     {"lbgap", JsonNum(r.lbgap)},
                     {"ubgap", JsonNum(r.ubgap)},
                     {"solved", r.solved},
                     {"avg_best", JsonNum(r.avg_best)}});
      }
      os << j.dump(2) << "\n";
      return;
    }
  }
}

void WriteProfile(std::ostream& os, const std::vector<ProfilePoint>& points,
                  OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      os << "model,tau,rho\n";
      for (const ProfilePoint& p : points) {
        os << p.model << "," << Num(p.tau) << "," << Num(p.rho) << "\n";
      }
      return;
    case OutputFormat::kMarkdown:
      os << "| model | tau | rho |\n|---|---|---|\n";
      for (const ProfilePoint& p : points) {
        os << "| " << p.model << " | " << Fixed(p.tau, 3) << " | "
           << Fixed(p.rho, 3) << " |\n";
      }
      return;
    case OutputFormat::kJson: {
      nlohmann::json j = nlohmann::json::array();
      for (const ProfilePoint& p : points) {
        j.push_back({{"model", p.model}, {"tau", p.tau}, {"rho", p.rho}});
      }
      os << j.dump(2) << "\n";
      return;
    }
  }
}

}  // namespace rrsched
