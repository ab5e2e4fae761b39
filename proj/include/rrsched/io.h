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


// Readers and writers for instances, scenario sets and schedules.
//
//   Instance JSON    {"id": str, "n": int, "p_hat": [int], "p_bar": [int]}
//   Instance CSV     header job,p_hat,p_bar, one line per job 1..n
//   Polyhedron JSON  {"n": int, "rows": [{"a": [num], "b": num}]}
//                    or {"type": "budgeted", "gamma": num} for the budgeted
//                    set around a given instance
//   Schedule JSON    {"positions": "1-based", "jobs": [int]}, where jobs[j-1]
//                    is the job in position j
//
// Instance data must be integers in [0, 1e6].

#ifndef RRSCHED_IO_H_
#define RRSCHED_IO_H_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rrsched/instance.h"
#include "rrsched/uncertainty.h"

namespace rrsched {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxInstanceValue = 1e6;

Instance ParseInstanceJson(std::string_view text);
std::string InstanceToJson(const Instance& inst);

// Rows may come in any job order; every job 1..n must appear once.
Instance ReadInstanceCsv(std::istream& in, std::string id);
void WriteInstanceCsv(std::ostream& os, const Instance& inst);

// Reads by extension (.json or .csv). The id of a CSV instance is the file
// stem.
Instance LoadInstance(const std::string& path);

// `inst` is required for the budgeted form.
Polyhedron ParsePolyhedronJson(std::string_view text,
                               const Instance* inst = nullptr);
std::string PolyhedronToJson(const Polyhedron& u);

Schedule ParseScheduleJson(std::string_view text);
std::string ScheduleToJson(const Schedule& s);

// Text file contents; throws FormatError if the file cannot be read.
std::string ReadFile(const std::string& path);

}  // namespace rrsched

#endif  // RRSCHED_IO_H_
