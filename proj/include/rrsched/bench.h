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


// Random instances, experiment sweeps, summary tables and performance
// profiles.
//
// Random numbers come from PCG32 (PCG-XSH-RR with 64-bit state and 32-bit
// output, multiplier 6364136223846793005, seeding as in the reference
// pcg32_srandom_r). Bounded integers use rejection sampling on the low
// range so that every value is equally likely. Instance k (0-based) of size
// n drawn with seed s uses the stream n * 2^32 + k and draws p_hat_1..p_hat_n
// followed by p_bar_1..p_bar_n.

#ifndef RRSCHED_BENCH_H_
#define RRSCHED_BENCH_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rrsched/instance.h"
#include "rrsched/models.h"

namespace rrsched {

class Pcg32 {
 public:
  Pcg32(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t Next();
  // Uniform on {lo, ..., hi}; requires lo <= hi.
  std::uint32_t Uniform(std::uint32_t lo, std::uint32_t hi);

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

// Values uniform on {1, ..., 100}; ids are "n<n>_s<seed>_<k+1>".
std::vector<Instance> GenerateInstances(std::uint64_t seed, int n, int count);

struct ModelSpec {
  ModelKind kind;
  bool warm_start = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<int> sizes{10, 15, 20};
  std::vector<double> gammas{3, 5, 7};
  std::vector<int> deltas{0, 1, 2, 3};
  int instances_per_cell = 20;
  std::vector<ModelSpec> models;
  double time_limit = 600.0;
  // Runs the three heuristics as additional methods. Warm starts always
  // use the min-max schedule.
  bool heuristics = true;
  // When nonempty, used instead of generated instances (sizes and
  // instances_per_cell are then ignored).
  std::vector<Instance> instances;
};

// Throws std::invalid_argument for empty lists or nonpositive counts.
void ValidateConfig(const ExperimentConfig& config);

inline constexpr const char* kStatusHeuristic = "HEURISTIC";
inline constexpr const char* kStatusError = "ERROR";

// One solve (or heuristic run). Missing values are NaN.
struct ResultRecord {
  std::string instance;
  std::string model;  // Label() of the model, or the heuristic name
  bool warm_start = false;
  int n = 0;
  double gamma = 0.0;
  int delta = 0;
  std::string status;  // ToString(MilpStatus), HEURISTIC or ERROR
  double time_s = 0.0;
  double ub = 0.0;
  double lb = 0.0;
  double lbgap_pct = 0.0;
  double ubgap_pct = 0.0;
  double best_known = 0.0;
  std::string message;  // error text, not serialized

  bool solved() const { return status == "OPTIMAL"; }
  bool failed() const { return status == kStatusError || status == "INFEASIBLE"; }
};

// Gaps relative to best_known, in percent.
double LbGap(double lb, double best_known);
double UbGap(double ub, double best_known);

// Fills best_known (the smallest finite ub of any method on the same
// instance, gamma and delta) and the gap columns.
void AssignBestKnown(std::vector<ResultRecord>& records);

using RecordCallback = std::function<void(const ResultRecord&)>;

// Runs every instance x gamma x delta x method combination. Failures are
// recorded with status ERROR and never stop the sweep.
std::vector<ResultRecord> RunExperiment(const ExperimentConfig& config,
                                        const RecordCallback& progress = {});

enum class GroupBy { kGamma, kDelta };

// One table row: exact-model runs of one model with equal n and gamma (or
// delta). Averages over an empty set are NaN.
struct SummaryRow {
  int n = 0;
  double key = 0.0;  // gamma or delta
  std::string model;
  bool warm_start = false;
  int runs = 0;
  int solved = 0;
  double time = 0.0;   // over solved runs
  double lbgap = 0.0;  // over unsolved runs
  double ubgap = 0.0;  // over unsolved runs
  double avg_best = 0.0;
};

std::vector<SummaryRow> Summarize(const std::vector<ResultRecord>& records,
                                  GroupBy by);

struct ProfilePoint {
  std::string model;
  double tau = 0.0;
  double rho = 0.0;
};

// Solve times per model, one entry per problem instance in a fixed order;
// nullopt marks an unsolved run. Unsolved runs get the ratio
// 2 * (largest finite ratio), or 2 if there is none. Points are reported
// for every distinct ratio value, sorted by tau, then model.
std::vector<ProfilePoint> PerformanceProfile(
    const std::map<std::string, std::vector<std::optional<double>>>& times);

// Exact-model records; a model tag is the label plus "+ws" for warm
// starts. Throws std::invalid_argument when a model lacks a record for some
// (instance, gamma, delta) or has two.
std::vector<ProfilePoint> PerformanceProfile(
    const std::vector<ResultRecord>& records);

enum class OutputFormat { kCsv, kMarkdown, kJson };

std::optional<OutputFormat> ParseOutputFormat(const std::string& name);

// Header instance,model,warm_start,n,gamma,delta,status,time_s,ub,lb,
// lbgap_pct,ubgap_pct,best_known. NaN is an empty cell, infinities are
// inf and -inf, other numbers are printed with 17 significant digits.
void WriteRecordsCsv(std::ostream& os, const std::vector<ResultRecord>& r);
// Throws FormatError on malformed input.
std::vector<ResultRecord> ReadRecordsCsv(std::istream& in);

void WriteRecords(std::ostream& os, const std::vector<ResultRecord>& r,
                  OutputFormat format);
void WriteSummary(std::ostream& os, const std::vector<SummaryRow>& rows,
                  GroupBy by, OutputFormat format);
void WriteProfile(std::ostream& os, const std::vector<ProfilePoint>& points,
                  OutputFormat format);

}  // namespace rrsched

#endif  // RRSCHED_BENCH_H_
