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


// Command-line front end: instance generation, single solves, subproblem
// evaluation, heuristics, sweeps and performance profiles.
//
// Exit codes: 0 success, 2 configuration error, 3 a solve failure was
// recorded.

#include <cstdint>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrsched/bench.h"
#include "rrsched/heuristics.h"
#include "rrsched/instance.h"
#include "rrsched/io.h"
#include "rrsched/models.h"
#include "rrsched/subproblems.h"
#include "rrsched/uncertainty.h"

namespace rrsched {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolveFailure = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model = "matching";
  int k = 2;
  int delta = 0;
  std::optional<double> gamma;
  std::string normalization = "deviation";
  double time_limit = 600.0;
  bool warm_start = false;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::string instance;
  std::string uncertainty;
  std::vector<int> schedule;
  std::vector<double> scenario;
  // generate / benchmark
  std::vector<int> sizes{10};
  int count = 20;
  std::vector<double> gammas{3, 5, 7};
  std::vector<int> deltas{0, 1, 2, 3};
  std::vector<std::string> models;
  std::vector<std::string> instance_files;
  bool no_heuristics = false;
  std::string summary;
  std::string group_by = "gamma";
  // heuristic
  std::string method = "all";
  // profile
  std::string results;
  std::string table;
};

// Output stream for --out, stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot write " + path);
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

OutputFormat Format(const std::string& name, OutputFormat fallback) {
  if (name.empty()) return fallback;
  const std::optional<OutputFormat> f = ParseOutputFormat(name);
  if (!f) throw ConfigError("unknown format " + name);
  return *f;
}

ModelKind Kind(const std::string& name, int k) {
  const std::optional<ModelType> type = ParseModelType(name);
  if (!type) throw ConfigError("unknown model " + name);
  if (*type == ModelType::kGeneral) {
    if (k < 1) throw ConfigError("--k must be at least 1");
    return ModelKind::General(k);
  }
  return {*type, 0};
}

BudgetNormalization Normalization(const std::string& name) {
  if (name == "deviation") return BudgetNormalization::kDeviation;
  if (name == "difference") return BudgetNormalization::kDifference;
  throw ConfigError("unknown normalization " + name);
}

struct Problem {
  std::optional<Instance> instance;
  std::optional<Polyhedron> u;
};

// Reads --instance and --uncertainty; builds the budgeted set from --gamma
// when no explicit set is given.
Problem LoadProblem(const Options& o, bool need_set) {
  Problem p;
  if (!o.instance.empty()) p.instance = LoadInstance(o.instance);
  if (!o.uncertainty.empty()) {
    p.u = ParsePolyhedronJson(ReadFile(o.uncertainty),
                              p.instance ? &*p.instance : nullptr);
  } else if (o.gamma) {
    if (!p.instance) throw ConfigError("--gamma needs --instance");
    p.u = BudgetedPolyhedron(*p.instance, *o.gamma,
                             Normalization(o.normalization));
  }
  if (need_set && !p.u) {
    throw ConfigError("need --uncertainty or --instance with --gamma");
  }
  if (p.instance && p.u && p.instance->size() != p.u->dim()) {
    throw ConfigError("instance and scenario set differ in size");
  }
  return p;
}

nlohmann::json Num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json ScheduleJson(const Schedule& s) {
  return nlohmann::json::parse(ScheduleToJson(s));
}

int RunGenerate(const Options& o) {
  if (o.sizes.size() != 1) throw ConfigError("generate takes one --n");
  const std::vector<Instance> instances =
      GenerateInstances(o.seed, o.sizes.front(), o.count);
  const OutputFormat format = Format(o.format, OutputFormat::kJson);
  if (format == OutputFormat::kMarkdown) {
    throw ConfigError("generate writes json or csv");
  }
  if (o.out.empty()) {
    for (const Instance& inst : instances) {
      if (format == OutputFormat::kJson) {
        std::cout << InstanceToJson(inst) << "\n";
      } else {
        std::cout << "# " << inst.id() << "\n";
        WriteInstanceCsv(std::cout, inst);
      }
    }
    return kExitOk;
  }
  // --out names a directory receiving one file per instance.
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw ConfigError("cannot create " + o.out);
  for (const Instance& inst : instances) {
    const bool json = format == OutputFormat::kJson;
    Output out(o.out + "/" + inst.id() + (json ? ".json" : ".csv"));
    if (json) {
      out.get() << InstanceToJson(inst) << "\n";
    } else {
      WriteInstanceCsv(out.get(), inst);
    }
  }
  return kExitOk;
}

int RunSolve(const Options& o) {
  const Problem p = LoadProblem(o, true);
  const ModelKind kind = Kind(o.model, o.k);
  if (o.delta < 0) throw ConfigError("--delta must be nonnegative");
  if (!(o.time_limit > 0)) throw ConfigError("--time-limit must be positive");
  const OutputFormat format = Format(o.format, OutputFormat::kJson);

  RecoverableConfig config;
  config.milp.time_limit = o.time_limit;
  std::optional<HeuristicResult> minmax;
  if (o.warm_start) {
    minmax = MinMaxHeuristic(*p.u, o.delta, config.milp);
    config.warm_start = minmax->schedule;
  }
  ResultRecord r;
  r.instance = p.instance ? p.instance->id() : o.uncertainty;
  r.model = Label(kind);
  r.warm_start = o.warm_start;
  r.n = p.u->dim();
  r.gamma = o.gamma.value_or(std::nan(""));
  r.delta = o.delta;
  std::optional<RecoverableSolution> sol;
  try {
    sol = SolveRecoverable(kind, *p.u, o.delta, config);
    r.status = ToString(sol->status);
    r.time_s = sol->wall_time;
    r.ub = sol->value;
    r.lb = sol->bound;
  } catch (const NumericalError& e) {
    r.status = kStatusError;
    r.message = e.what();
    r.ub = r.lb = std::nan("");
  }
  r.best_known = std::isfinite(r.ub) ? r.ub : std::nan("");
  r.ubgap_pct = UbGap(r.ub, r.best_known);
  r.lbgap_pct = LbGap(r.lb, r.best_known);

  Output out(o.out);
  if (format == OutputFormat::kJson) {
    nlohmann::json j{{"model", r.model},
                     {"n", r.n},
                     {"delta", r.delta},
                     {"status", r.status},
                     {"value", Num(r.ub)},
                     {"bound", Num(r.lb)},
                     {"time_s", r.time_s},
                     {"warm_start", o.warm_start}};
    if (o.gamma) j["gamma"] = *o.gamma;
    if (p.instance) j["instance"] = p.instance->id();
    if (!r.message.empty()) j["message"] = r.message;
    if (sol) {
      j["nodes"] = sol->nodes;
      if (sol->first_stage) j["first_stage"] = ScheduleJson(*sol->first_stage);
      if (o.warm_start) {
        j["warm_start_value"] = Num(sol->warm_start_value);
        j["warm_start_accepted"] = sol->warm_start_accepted;
      }
    }
    out.get() << j.dump(2) << "\n";
  } else {
    WriteRecords(out.get(), {r}, format);
  }
  return r.failed() ? kExitSolveFailure : kExitOk;
}

Schedule ScheduleOption(const Options& o, int n) {
  if (o.schedule.empty()) throw ConfigError("--schedule is required");
  if (static_cast<int>(o.schedule.size()) != n) {
    throw ConfigError("--schedule has the wrong length");
  }
  try {
    return Schedule(o.schedule);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--schedule: ") + e.what());
  }
}

int RunIncremental(const Options& o) {
  if (o.scenario.empty()) throw ConfigError("--scenario is required");
  const int n = static_cast<int>(o.scenario.size());
  const Schedule x = ScheduleOption(o, n);
  if (o.delta < 0) throw ConfigError("--delta must be nonnegative");
  const std::optional<ModelType> type = ParseModelType(o.model);
  if (!type || *type == ModelType::kGeneral) {
    throw ConfigError("incremental uses --model matching or assignment");
  }
  const IncrementalResult r = *type == ModelType::kMatching
                                  ? IncrementalMatching(x, o.scenario, o.delta)
                                  : IncrementalAssignment(x, o.scenario, o.delta);
  nlohmann::json swaps = nlohmann::json::array();
  for (const JobPair& pr : r.matching.swaps()) {
    swaps.push_back({pr.first, pr.second});
  }
  nlohmann::json j{{"value", r.value},
                   {"first_stage_cost", ScheduleCost(x, o.scenario)},
                   {"swaps", swaps},
                   {"second_stage", ScheduleJson(r.second_stage)},
                   {"perturbed", r.perturbed}};
  Output out(o.out);
  out.get() << j.dump(2) << "\n";
  return kExitOk;
}

int RunAdversarial(const Options& o) {
  const Problem p = LoadProblem(o, true);
  const Schedule x = ScheduleOption(o, p.u->dim());
  if (o.delta < 0) throw ConfigError("--delta must be nonnegative");
  const AdversarialResult r = AdversarialValue(x, *p.u, o.delta);
  nlohmann::json j{{"value", r.value}, {"worst_scenario", r.worst_scenario}};
  Output out(o.out);
  out.get() << j.dump(2) << "\n";
  return kExitOk;
}

int RunHeuristic(const Options& o) {
  const Problem p = LoadProblem(o, true);
  if (o.delta < 0) throw ConfigError("--delta must be nonnegative");
  std::vector<HeuristicMethod> methods;
  if (o.method == "all") {
    methods = {HeuristicMethod::kSorting, HeuristicMethod::kMaxMin,
               HeuristicMethod::kMinMax};
  } else if (const auto m = ParseHeuristicMethod(o.method)) {
    methods = {*m};
  } else {
    throw ConfigError("unknown method " + o.method);
  }
  SolveConfig config;
  config.time_limit = o.time_limit;
  const OutputFormat format = Format(o.format, OutputFormat::kJson);
  std::vector<ResultRecord> records;
  nlohmann::json j = nlohmann::json::array();
  for (HeuristicMethod m : methods) {
    HeuristicResult h;
    switch (m) {
      case HeuristicMethod::kSorting:
        h = p.instance ? SortingHeuristic(*p.instance, *p.u, o.delta)
                       : SortingHeuristic(*p.u, o.delta);
        break;
      case HeuristicMethod::kMaxMin:
        h = MaxMinHeuristic(*p.u, o.delta);
        break;
      case HeuristicMethod::kMinMax:
        h = MinMaxHeuristic(*p.u, o.delta, config);
        break;
    }
    j.push_back({{"method", ToString(m)},
                 {"value", h.value},
                 {"inner_value", h.inner_value},
                 {"schedule", ScheduleJson(h.schedule)},
                 {"time_s", h.wall_time}});
    ResultRecord r;
    r.instance = p.instance ? p.instance->id() : o.uncertainty;
    r.model = ToString(m);
    r.n = p.u->dim();
    r.gamma = o.gamma.value_or(std::nan(""));
    r.delta = o.delta;
    r.status = kStatusHeuristic;
    r.time_s = h.wall_time;
    r.ub = h.value;
    r.lb = std::nan("");
    records.push_back(r);
  }
  AssignBestKnown(records);
  Output out(o.out);
  if (format == OutputFormat::kJson) {
    out.get() << j.dump(2) << "\n";
  } else {
    WriteRecords(out.get(), records, format);
  }
  return kExitOk;
}

GroupBy Grouping(const std::string& name) {
  if (name == "gamma") return GroupBy::kGamma;
  if (name == "delta") return GroupBy::kDelta;
  throw ConfigError("group by gamma or delta");
}

int RunBenchmark(const Options& o) {
  ExperimentConfig config;
  config.seed = o.seed;
  config.sizes = o.sizes;
  config.instances_per_cell = o.count;
  config.gammas = o.gammas;
  config.deltas = o.deltas;
  config.time_limit = o.time_limit;
  config.heuristics = !o.no_heuristics;
  for (const std::string& path : o.instance_files) {
    config.instances.push_back(LoadInstance(path));
  }
  const std::vector<std::string> names =
      o.models.empty() ? std::vector<std::string>{"matching", "assignment",
                                                  "general"}
                       : o.models;
  for (const std::string& name : names) {
    const ModelKind kind = Kind(name, o.k);
    config.models.push_back({kind, false});
    if (o.warm_start) config.models.push_back({kind, true});
  }
  try {
    ValidateConfig(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const OutputFormat format = Format(o.format, OutputFormat::kCsv);
  const GroupBy by = Grouping(o.group_by);

  const std::vector<ResultRecord> records =
      RunExperiment(config, [](const ResultRecord& r) {
        std::cerr << r.instance << " gamma=" << r.gamma << " delta=" << r.delta
                  << " " << (r.warm_start ? r.model + "+ws" : r.model) << " "
                  << r.status << " " << r.time_s << "s\n";
      });
  {
    Output out(o.out);
    WriteRecords(out.get(), records, format);
  }
  if (!o.summary.empty()) {
    Output out(o.summary);
    WriteSummary(out.get(), Summarize(records, by), by,
                 Format(o.format, OutputFormat::kMarkdown));
  }
  bool failed = false;
  for (const ResultRecord& r : records) {
    if (r.failed()) {
      failed = true;
      std::cerr << "failure: " << r.instance << " " << r.model << ": "
                << r.message << "\n";
    }
  }
  return failed ? kExitSolveFailure : kExitOk;
}

int RunProfile(const Options& o) {
  if (o.results.empty()) throw ConfigError("--results is required");
  std::istringstream in(ReadFile(o.results));
  const std::vector<ResultRecord> records = ReadRecordsCsv(in);
  Output out(o.out);
  if (!o.table.empty()) {
    const GroupBy by = Grouping(o.table);
    WriteSummary(out.get(), Summarize(records, by), by,
                 Format(o.format, OutputFormat::kMarkdown));
    return kExitOk;
  }
  std::vector<ProfilePoint> points;
  try {
    points = PerformanceProfile(records);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  WriteProfile(out.get(), points, Format(o.format, OutputFormat::kCsv));
  return kExitOk;
}

void AddProblemFlags(CLI::App* app, Options& o) {
  app->add_option("--instance", o.instance, "Instance file (.json or .csv)");
  app->add_option("--uncertainty", o.uncertainty, "Scenario set JSON");
  app->add_option("--gamma", o.gamma, "Budget of the budgeted set");
  app->add_option("--normalization", o.normalization,
                  "Budget denominator: deviation (p_bar) or difference "
                  "(p_bar - p_hat)")
      ->check(CLI::IsMember({"deviation", "difference"}));
  app->add_option("--delta", o.delta, "Maximal number of swaps");
}

void AddOutputFlags(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "Output path (default stdout)");
  app->add_option("--format", o.format, "csv, md or json")
      ->check(CLI::IsMember({"csv", "md", "json"}));
}

void AddModelFlags(CLI::App* app, Options& o) {
  app->add_option("--model", o.model, "general, matching or assignment")
      ->check(CLI::IsMember({"general", "matching", "assignment"}));
  app->add_option("--k", o.k, "Candidate recoveries of GENERAL");
  app->add_option("--time-limit", o.time_limit, "Seconds per solve");
  app->add_flag("--warm-start", o.warm_start, "Seed with the min-max schedule");
}

int Main(int argc, char** argv) {
  CLI::App app{"Recoverable robust single-machine scheduling"};
  app.require_subcommand(1);
  Options o;

  CLI::App* generate = app.add_subcommand("generate", "Random instances");
  generate->add_option("--seed", o.seed, "PCG32 seed");
  generate->add_option("--n", o.sizes, "Number of jobs")->expected(1);
  generate->add_option("--count", o.count, "Number of instances");
  AddOutputFlags(generate, o);

  CLI::App* solve = app.add_subcommand("solve", "Solve a compact model");
  AddProblemFlags(solve, o);
  AddModelFlags(solve, o);
  AddOutputFlags(solve, o);
  solve->add_option("--seed", o.seed, "Unused; accepted for uniformity");

  CLI::App* incremental =
      app.add_subcommand("incremental", "Best recovery of a schedule");
  incremental->add_option("--schedule", o.schedule, "Jobs by position")
      ->delimiter(',');
  incremental->add_option("--scenario", o.scenario, "Processing times")
      ->delimiter(',');
  incremental->add_option("--delta", o.delta, "Maximal number of swaps");
  incremental->add_option("--model", o.model, "matching or assignment")
      ->check(CLI::IsMember({"matching", "assignment"}));
  AddOutputFlags(incremental, o);

  CLI::App* adversarial =
      app.add_subcommand("adversarial", "Worst case of a schedule");
  AddProblemFlags(adversarial, o);
  adversarial->add_option("--schedule", o.schedule, "Jobs by position")
      ->delimiter(',');
  AddOutputFlags(adversarial, o);

  CLI::App* heuristic = app.add_subcommand("heuristic", "Heuristic schedules");
  AddProblemFlags(heuristic, o);
  heuristic->add_option("--method", o.method, "sorting, maxmin, minmax or all")
      ->check(CLI::IsMember({"sorting", "maxmin", "minmax", "all"}));
  heuristic->add_option("--time-limit", o.time_limit,
                        "Seconds for the min-max solve");
  AddOutputFlags(heuristic, o);

  CLI::App* benchmark = app.add_subcommand("benchmark", "Experiment sweep");
  benchmark->add_option("--seed", o.seed, "PCG32 seed");
  benchmark->add_option("--n", o.sizes, "Instance sizes")->delimiter(',');
  benchmark->add_option("--count", o.count, "Instances per size");
  benchmark->add_option("--gamma", o.gammas, "Budgets")->delimiter(',');
  benchmark->add_option("--delta", o.deltas, "Swap limits")->delimiter(',');
  benchmark->add_option("--model", o.models, "Models (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"general", "matching", "assignment"}));
  benchmark->add_option("--k", o.k, "Candidate recoveries of GENERAL");
  benchmark->add_option("--time-limit", o.time_limit, "Seconds per solve");
  benchmark->add_flag("--warm-start", o.warm_start,
                      "Also run every model with a min-max warm start");
  benchmark->add_option("--instances", o.instance_files,
                        "Instance files instead of generated ones");
  benchmark->add_flag("--no-heuristics", o.no_heuristics,
                      "Skip the heuristic rows");
  benchmark->add_option("--summary", o.summary, "Also write a summary table");
  benchmark->add_option("--group-by", o.group_by, "gamma or delta")
      ->check(CLI::IsMember({"gamma", "delta"}));
  AddOutputFlags(benchmark, o);

  CLI::App* profile =
      app.add_subcommand("profile", "Performance profile of a results CSV");
  profile->add_option("--results", o.results, "Results CSV");
  profile->add_option("--table", o.table,
                      "Summary table grouped by gamma or delta instead")
      ->check(CLI::IsMember({"gamma", "delta"}));
  AddOutputFlags(profile, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*generate) return RunGenerate(o);
    if (*solve) return RunSolve(o);
    if (*incremental) return RunIncremental(o);
    if (*adversarial) return RunAdversarial(o);
    if (*heuristic) return RunHeuristic(o);
    if (*benchmark) return RunBenchmark(o);
    if (*profile) return RunProfile(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solve failure: " << e.what() << "\n";
    return kExitSolveFailure;
  }
  return kExitConfig;
}

}  // namespace
}  // namespace rrsched

int main(int argc, char** argv) { return rrsched::Main(argc, argv); }
