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

// Core domain model for single-machine total-flow-time scheduling with
// swap recourse.
//
// Jobs and positions are 1-based throughout: a Schedule stores, for each
// position j = 1..n, the job processed there. A job in position j
// contributes its processing time with weight n + 1 - j to the total flow
// time.

#ifndef RRSCHED_INSTANCE_H_
#define RRSCHED_INSTANCE_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rrsched {

// Realized processing times, indexed by job - 1.
using Scenario = std::vector<double>;

// Nominal processing times plus maximal delays for n jobs.
class Instance {
 public:
  Instance(std::string id, std::vector<double> nominal,
           std::vector<double> deviation);

  int size() const { return static_cast<int>(nominal_.size()); }
  const std::string& id() const { return id_; }
  const std::vector<double>& nominal() const { return nominal_; }
  const std::vector<double>& deviation() const { return deviation_; }

  // p_hat + p_bar, the processing times when every job is fully delayed.
  std::vector<double> WorstCase() const;

 private:
  std::string id_;
  std::vector<double> nominal_;
  std::vector<double> deviation_;
};

// A permutation of jobs: job_at(j) is the job in position j.
class Schedule {
 public:
  // Throws std::invalid_argument unless `jobs` is a permutation of 1..n.
  explicit Schedule(std::vector<int> jobs);

  static Schedule Identity(int n);

  int size() const { return static_cast<int>(jobs_.size()); }
  int job_at(int position) const { return jobs_[position - 1]; }
  int position_of(int job) const { return positions_[job - 1]; }
  const std::vector<int>& jobs() const { return jobs_; }

  friend bool operator==(const Schedule& a, const Schedule& b) {
    return a.jobs_ == b.jobs_;
  }

 private:
  std::vector<int> jobs_;
  std::vector<int> positions_;
};

std::ostream& operator<<(std::ostream& os, const Schedule& s);

// An unordered pair of distinct jobs, stored with first < second.
struct JobPair {
  int first;
  int second;

  friend auto operator<=>(const JobPair&, const JobPair&) = default;
};

// A set of mutually disjoint job swaps.
class RecoveryMatching {
 public:
  RecoveryMatching() = default;
  // Throws std::invalid_argument if a job repeats or a pair is degenerate.
  explicit RecoveryMatching(std::vector<JobPair> swaps);

  int size() const { return static_cast<int>(swaps_.size()); }
  bool empty() const { return swaps_.empty(); }
  const std::vector<JobPair>& swaps() const { return swaps_; }

  friend bool operator==(const RecoveryMatching&,
                         const RecoveryMatching&) = default;

 private:
  std::vector<JobPair> swaps_;
};

// Total flow time sum_j p[job_at(j)] * (n + 1 - j).
double ScheduleCost(const Schedule& s, std::span<const double> p);

// Shortest processing time order, ties broken by ascending job index.
Schedule SptSchedule(std::span<const double> p);

// Number of disjoint transpositions turning x into y, or nullopt when the
// two schedules do not differ by disjoint swaps. Symmetric in its arguments.
std::optional<int> SwapDistance(const Schedule& x, const Schedule& y);

// x with the positions of every pair in m exchanged.
Schedule ApplySwaps(const Schedule& x, const RecoveryMatching& m);

}  // namespace rrsched

#endif  // RRSCHED_INSTANCE_H_
