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


#include "rrsched/io.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rrsched {

using nlohmann::json;

namespace {

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

const json& Field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double InstanceValue(const json& v, const char* what) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw FormatError(std::string(what) + " entries must be integers");
  }
  const double d = v.get<double>();
  if (d < 0 || d > kMaxInstanceValue) {
    throw FormatError(std::string(what) + " entry out of [0, 1e6]");
  }
  return d;
}

double InstanceValue(const std::string& cell, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(cell, &used);
  } catch (const std::exception&) {
    throw FormatError(std::string("bad ") + what + " value \"" + cell + "\"");
  }
  if (used != cell.size()) {
    throw FormatError(std::string("bad ") + what + " value \"" + cell + "\"");
  }
  if (v < 0 || v > kMaxInstanceValue) {
    throw FormatError(std::string(what) + " entry out of [0, 1e6]");
  }
  return static_cast<double>(v);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

}  // namespace

Instance ParseInstanceJson(std::string_view text) {
  const json j = Parse(text);
  const json& n = Field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) {
    throw FormatError("\"n\" must be a positive integer");
  }
  const json& hat = Field(j, "p_hat");
  const json& bar = Field(j, "p_bar");
  if (!hat.is_array() || !bar.is_array() ||
      hat.size() != n.get<std::size_t>() ||
      bar.size() != n.get<std::size_t>()) {
    throw FormatError("\"p_hat\" and \"p_bar\" must be arrays of length n");
  }
  std::vector<double> nominal;
  std::vector<double> deviation;
  for (const json& v : hat) nominal.push_back(InstanceValue(v, "p_hat"));
  for (const json& v : bar) deviation.push_back(InstanceValue(v, "p_bar"));
  std::string id;
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw FormatError("\"id\" must be a string");
    id = j["id"].get<std::string>();
  }
  return Instance(std::move(id), std::move(nominal), std::move(deviation));
}

std::string InstanceToJson(const Instance& inst) {
  json j;
  j["id"] = inst.id();
  j["n"] = inst.size();
  j["p_hat"] = json::array();
  j["p_bar"] = json::array();
  for (double v : inst.nominal()) j["p_hat"].push_back(std::llround(v));
  for (double v : inst.deviation()) j["p_bar"].push_back(std::llround(v));
  return j.dump();
}

Instance ReadInstanceCsv(std::istream& in, std::string id) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV");
  const std::vector<std::string> header = SplitCsv(line);
  int col_job = -1, col_hat = -1, col_bar = -1;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (header[c] == "job") col_job = c;
    if (header[c] == "p_hat") col_hat = c;
    if (header[c] == "p_bar") col_bar = c;
  }
  if (col_job < 0 || col_hat < 0 || col_bar < 0) {
    throw FormatError("CSV header must contain job,p_hat,p_bar");
  }
  std::vector<std::pair<double, double>> by_job;
  std::vector<bool> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = SplitCsv(line);
    if (static_cast<int>(cells.size()) != static_cast<int>(header.size())) {
      throw FormatError("CSV line " + std::to_string(line_no) +
                        " has the wrong number of cells");
    }
    const double job = InstanceValue(cells[col_job], "job");
    const int k = static_cast<int>(job);
    if (k < 1) throw FormatError("job numbers start at 1");
    if (k > static_cast<int>(by_job.size())) {
      by_job.resize(k, {0.0, 0.0});
      seen.resize(k, false);
    }
    if (seen[k - 1]) {
      throw FormatError("job " + std::to_string(k) + " listed twice");
    }
    seen[k - 1] = true;
    by_job[k - 1] = {InstanceValue(cells[col_hat], "p_hat"),
                     InstanceValue(cells[col_bar], "p_bar")};
  }
  if (by_job.empty()) throw FormatError("CSV has no jobs");
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw FormatError("job " + std::to_string(k + 1) + " missing");
    }
  }
  std::vector<double> nominal, deviation;
  for (const auto& [h, b] : by_job) {
    nominal.push_back(h);
    deviation.push_back(b);
  }
  return Instance(std::move(id), std::move(nominal), std::move(deviation));
}

void WriteInstanceCsv(std::ostream& os, const Instance& inst) {
  os << "job,p_hat,p_bar\n";
  for (int i = 0; i < inst.size(); ++i) {
    os << i + 1 << "," << std::llround(inst.nominal()[i]) << ","
       << std::llround(inst.deviation()[i]) << "\n";
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance LoadInstance(const std::string& path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(),
                        suffix) == 0;
  };
  if (ends_with(".json")) return ParseInstanceJson(ReadFile(path));
  if (ends_with(".csv")) {
    std::istringstream in(ReadFile(path));
    std::string stem = path.substr(path.find_last_of('/') + 1);
    stem = stem.substr(0, stem.size() - 4);
    return ReadInstanceCsv(in, stem);
  }
  throw FormatError("instance file must end in .json or .csv: " + path);
}

Polyhedron ParsePolyhedronJson(std::string_view text, const Instance* inst) {
  const json j = Parse(text);
  if (j.is_object() && j.contains("type")) {
    if (j["type"] != "budgeted") {
      throw FormatError("unknown scenario set type");
    }
    const json& gamma = Field(j, "gamma");
    if (!gamma.is_number()) throw FormatError("\"gamma\" must be a number");
    if (inst == nullptr) {
      throw FormatError("budgeted scenario set needs an instance");
    }
    try {
      return BudgetedPolyhedron(*inst, gamma.get<double>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  const json& n = Field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) {
    throw FormatError("\"n\" must be a positive integer");
  }
  const int dim = n.get<int>();
  const json& rows = Field(j, "rows");
  if (!rows.is_array()) throw FormatError("\"rows\" must be an array");
  std::vector<Halfspace> out;
  for (const json& r : rows) {
    const json& a = Field(r, "a");
    const json& b = Field(r, "b");
    if (!a.is_array() || static_cast<int>(a.size()) != dim) {
      throw FormatError("row \"a\" must have length n");
    }
    if (!b.is_number()) throw FormatError("row \"b\" must be a number");
    Halfspace h{{}, b.get<double>()};
    for (const json& v : a) {
      if (!v.is_number()) throw FormatError("row \"a\" must be numeric");
      h.a.push_back(v.get<double>());
    }
    out.push_back(std::move(h));
  }
  try {
    return Polyhedron(dim, std::move(out));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string PolyhedronToJson(const Polyhedron& u) {
  json j;
  j["n"] = u.dim();
  j["rows"] = json::array();
  for (const Halfspace& h : u.rows()) {
    j["rows"].push_back({{"a", h.a}, {"b", h.b}});
  }
  return j.dump();
}

Schedule ParseScheduleJson(std::string_view text) {
  const json j = Parse(text);
  const json& jobs = j.is_array() ? j : Field(j, "jobs");
  if (j.is_object() && j.contains("positions") &&
      j["positions"] != "1-based") {
    throw FormatError("only 1-based positions are supported");
  }
  std::vector<int> perm;
  for (const json& v : jobs) {
    if (!v.is_number_integer()) throw FormatError("jobs must be integers");
    perm.push_back(v.get<int>());
  }
  try {
    return Schedule(std::move(perm));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string ScheduleToJson(const Schedule& s) {
  json j;
  j["positions"] = "1-based";
  j["jobs"] = s.jobs();
  return j.dump();
}

}  // namespace rrsched
