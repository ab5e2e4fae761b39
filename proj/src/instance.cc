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

#include "rrsched/instance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rrsched {

namespace {

void CheckNonNegativeFinite(const std::vector<double>& v, const char* what) {
  for (double value : v) {
    if (!std::isfinite(value) || value < 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  " entries must be finite and nonnegative");
    }
  }
}

void CheckDimension(int expected, std::size_t actual, const char* what) {
  if (static_cast<std::size_t>(expected) != actual) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(expected) + ", got " +
                                std::to_string(actual));
  }
}

}  // namespace

Instance::Instance(std::string id, std::vector<double> nominal,
                   std::vector<double> deviation)
    : id_(std::move(id)),
      nominal_(std::move(nominal)),
      deviation_(std::move(deviation)) {
  if (nominal_.empty()) {
    throw std::invalid_argument("instance needs at least one job");
  }
  CheckDimension(size(), deviation_.size(), "deviation");
  CheckNonNegativeFinite(nominal_, "nominal");
  CheckNonNegativeFinite(deviation_, "deviation");
}

std::vector<double> Instance::WorstCase() const {
  std::vector<double> result(nominal_.size());
  for (std::size_t i = 0; i < result.size(); ++i) {
    result[i] = nominal_[i] + deviation_[i];
  }
  return result;
}

Schedule::Schedule(std::vector<int> jobs)
    : jobs_(std::move(jobs)), positions_(jobs_.size(), 0) {
  const int n = size();
  if (n == 0) throw std::invalid_argument("empty schedule");
  for (int pos = 1; pos <= n; ++pos) {
    const int job = jobs_[pos - 1];
    if (job < 1 || job > n || positions_[job - 1] != 0) {
      throw std::invalid_argument("schedule is not a permutation of 1..n");
    }
    positions_[job - 1] = pos;
  }
}

Schedule Schedule::Identity(int n) {
  std::vector<int> jobs(n);
  std::iota(jobs.begin(), jobs.end(), 1);
  return Schedule(std::move(jobs));
}

std::ostream& operator<<(std::ostream& os, const Schedule& s) {
  os << '(';
  for (int pos = 1; pos <= s.size(); ++pos) {
    if (pos > 1) os << ',';
    os << s.job_at(pos);
  }
  return os << ')';
}

RecoveryMatching::RecoveryMatching(std::vector<JobPair> swaps) {
  std::vector<int> seen;
  for (JobPair pair : swaps) {
    if (pair.first == pair.second || pair.first < 1 || pair.second < 1) {
      throw std::invalid_argument("swap must pair two distinct jobs");
    }
    if (pair.first > pair.second) std::swap(pair.first, pair.second);
    for (int job : {pair.first, pair.second}) {
      if (std::find(seen.begin(), seen.end(), job) != seen.end()) {
        throw std::invalid_argument("swaps overlap on job " +
                                    std::to_string(job));
      }
      seen.push_back(job);
    }
    swaps_.push_back(pair);
  }
  std::sort(swaps_.begin(), swaps_.end());
}

double ScheduleCost(const Schedule& s, std::span<const double> p) {
  const int n = s.size();
  CheckDimension(n, p.size(), "scenario");
  double cost = 0.0;
  for (int pos = 1; pos <= n; ++pos) {
    cost += p[s.job_at(pos) - 1] * static_cast<double>(n + 1 - pos);
  }
  return cost;
}

Schedule SptSchedule(std::span<const double> p) {
  std::vector<int> jobs(p.size());
  std::iota(jobs.begin(), jobs.end(), 1);
  std::stable_sort(jobs.begin(), jobs.end(),
                   [&p](int a, int b) { return p[a - 1] < p[b - 1]; });
  return Schedule(std::move(jobs));
}

std::optional<int> SwapDistance(const Schedule& x, const Schedule& y) {
  const int n = x.size();
  CheckDimension(n, y.size(), "second schedule");
  // partner[i] is the job whose first-stage position job i occupies in y.
  // The recovery is a set of disjoint swaps iff partner is an involution.
  int swaps = 0;
  for (int job = 1; job <= n; ++job) {
    const int partner = x.job_at(y.position_of(job));
    const int back = x.job_at(y.position_of(partner));
    if (back != job) return std::nullopt;
    if (partner > job) ++swaps;
  }
  return swaps;
}

Schedule ApplySwaps(const Schedule& x, const RecoveryMatching& m) {
  std::vector<int> jobs = x.jobs();
  const int n = x.size();
  for (const JobPair& pair : m.swaps()) {
    if (pair.second > n) {
      throw std::invalid_argument("swap references job outside 1..n");
    }
    std::swap(jobs[x.position_of(pair.first) - 1],
              jobs[x.position_of(pair.second) - 1]);
  }
  return Schedule(std::move(jobs));
}

}  // namespace rrsched
