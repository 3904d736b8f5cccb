// Copyright 2026 The TIC Authors.
//
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


#include "tic/pipeline.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <chrono>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "tic/errors.hpp"
#include "tic/ir_parser.hpp"

namespace tic {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw MissingFile(p.string() + " not found");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

StageFailure failure_from(std::string label, const std::exception& e) {
  if (const auto* se = dynamic_cast<const StageError*>(&e)) {
    return {std::move(label) + ":" + se->stage(), se->cause_kind(), se->what()};
  }
  if (const auto* te = dynamic_cast<const Error*>(&e)) {
    return {std::move(label), te->kind(), te->what()};
  }
  return {std::move(label), "InternalError", e.what()};
}

}  // namespace

bool StageFailure::is_crash() const {
  static const std::set<std::string> kCrashKinds = {
      "CassetteMiss", "ProviderError", "ConfigError", "MissingFile",
      "PackError",    "MissingExample", "DomainMismatch",
      "SearchSpaceTooLarge", "InternalError"};
  return kCrashKinds.count(kind) > 0;
}

bool PipelineResult::correct() const {
  return ok() && equivalence.has_value() && equivalence->equivalent;
}

double PipelineResult::seconds(std::string_view stage) const {
  for (const StageTiming& t : timings) {
    if (t.stage == stage) return t.seconds;
  }
  return 0;
}

double PipelineResult::total_seconds() const {
  double total = 0;
  for (const StageTiming& t : timings) total += t.seconds;
  return total;
}

std::string strategy_label(Strategy s, bool golden_ir) {
  if (golden_ir) return "golden-IR";
  switch (s) {
    case Strategy::kIc:
      return "TIC-IC";
    case Strategy::kG3:
      return "TIC-G3";
    case Strategy::kG1:
      return "TIC-G1";
  }
  return "?";
}

PipelineResult run_task(const TaskInput& input, const DomainPack& pack,
                        Strategy strategy, CompletionProvider* provider) {
  PipelineResult r;
  r.task_id = input.task_id;
  r.strategy = strategy_label(strategy, input.ir_text.has_value());
  for (const char* name : kStageNames) r.timings.push_back({name, 0, false});
  auto& t_translate = r.timings[0];
  auto& t_infer = r.timings[1];
  auto& t_compile = r.timings[2];
  auto& t_check = r.timings[3];

  if (!input.ir_text) {
    const auto start = Clock::now();
    t_translate.ran = true;
    try {
      if (provider == nullptr) {
        throw ConfigError("no completion provider configured");
      }
      Extraction ex =
          run_translation(strategy, *provider, pack, input.description);
      r.ir = std::move(ex.ir);
      r.diagnostics = std::move(ex.diagnostics);
    } catch (const std::exception& e) {
      t_translate.seconds = since(start);
      r.failure = failure_from("translate", e);
      return r;
    }
    t_translate.seconds = since(start);
  }

  {
    const auto start = Clock::now();
    t_infer.ran = true;
    if (input.ir_text) {
      try {
        r.ir = parse_program(*input.ir_text, input.ir_source);
        r.diagnostics = validate_program(r.ir, pack);
      } catch (const std::exception& e) {
        t_infer.seconds = since(start);
        r.failure = failure_from("infer:parse", e);
        return r;
      }
    }
    try {
      MaterializeOptions options;
      options.naming = pack.naming;
      r.materialized = materialize(r.ir, pack.rules(), options);
    } catch (const std::exception& e) {
      t_infer.seconds = since(start);
      r.failure = failure_from("infer", e);
      return r;
    }
    t_infer.seconds = since(start);
  }

  {
    const auto start = Clock::now();
    t_compile.ran = true;
    try {
      if (!pack.domain) {
        throw ConfigError("pack " + pack.name + " has no domain.pddl");
      }
      r.task_pddl = compile_task(r.materialized, *pack.domain, input.task_id,
                                 pack.compile_options());
    } catch (const std::exception& e) {
      t_compile.seconds = since(start);
      r.failure = failure_from("compile", e);
      return r;
    }
    t_compile.seconds = since(start);
  }

  if (input.ground_truth) {
    const auto start = Clock::now();
    t_check.ran = true;
    try {
      r.equivalence = tasks_equivalent(*r.task_pddl, *input.ground_truth);
    } catch (const std::exception& e) {
      r.failure = failure_from("check", e);
    }
    t_check.seconds = since(start);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T v;
    if constexpr (std::is_floating_point_v<T>) {
      v = static_cast<T>(std::stod(value, &used));
    } else {
      const long long raw = std::stoll(value, &used);
      if (raw < 0) throw std::out_of_range("negative");
      v = static_cast<T>(raw);
    }
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" +
                      value + "'");
  }
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues read_key_values(const std::filesystem::path& file) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(file.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("cannot read config " + file.string() + ": " +
                      e.message());
  }
  KeyValues out;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      out.emplace_back(key, node.data());
    } else {
      for (const auto& [sub, leaf] : node) out.emplace_back(sub, leaf.data());
    }
  }
  return out;
}

// Provider keys shared by config files and profile files.
bool apply_provider_key(ProviderProfile& p, const std::string& key,
                        const std::string& value) {
  if (key == "provider" || key == "name") {
    p.name = value;
  } else if (key == "endpoint") {
    p.endpoint = value;
  } else if (key == "model") {
    p.model = value;
  } else if (key == "temperature") {
    p.temperature = number<double>(key, value);
  } else if (key == "auth_env") {
    p.auth_env = value;
  } else if (key == "response_path") {
    p.response_path = value;
  } else if (key == "timeout") {
    p.timeout_seconds = number<int>(key, value);
  } else {
    return false;
  }
  return true;
}

}  // namespace

void apply_config_file(PipelineConfig& config,
                       const std::filesystem::path& file) {
  for (const auto& [key, value] : read_key_values(file)) {
    if (apply_provider_key(config.profile, key, value)) continue;
    if (key == "strategy" || key == "strategies") {
      config.strategies.clear();
      for (const std::string& s : split_list(value)) {
        config.strategies.push_back(parse_strategy(s));
      }
    } else if (key == "mode") {
      if (value == "golden" || value == "golden_ir") {
        config.golden_ir = true;
      } else {
        config.mode = parse_provider_mode(value);
      }
    } else if (key == "cassette_dir") {
      config.cassette_dir = value;
    } else if (key == "jobs") {
      config.jobs = std::max<std::size_t>(1, number<std::size_t>(key, value));
    } else if (key == "runs") {
      config.runs = std::max<std::size_t>(1, number<std::size_t>(key, value));
    } else if (key == "seed") {
      config.seed = number<std::uint64_t>(key, value);
    } else if (key == "domains") {
      config.domains = split_list(value);
    } else if (key == "planner_cmd") {
      config.planner_cmd = value;
    } else if (key == "planner_timeout") {
      config.planner_timeout_s = number<double>(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "' in " +
                        file.string());
    }
  }
}

ProviderProfile resolve_provider_profile(const std::string& name_or_path) {
  ProviderProfile p;
  if (name_or_path.empty() || name_or_path == "openai") {
    p.name = "openai";
    p.endpoint = "https://api.openai.com/v1/chat/completions";
    p.model = "gpt-4";
    return p;
  }
  if (name_or_path == "openai-gpt35") {
    p.name = name_or_path;
    p.endpoint = "https://api.openai.com/v1/chat/completions";
    p.model = "gpt-3.5-turbo";
    return p;
  }
  if (!std::filesystem::is_regular_file(name_or_path)) {
    throw ConfigError("unknown provider profile '" + name_or_path +
                      "' (expected openai, openai-gpt35 or a profile file)");
  }
  p.name = std::filesystem::path(name_or_path).stem().string();
  for (const auto& [key, value] : read_key_values(name_or_path)) {
    if (!apply_provider_key(p, key, value)) {
      throw ConfigError("unknown provider key '" + key + "' in " +
                        name_or_path);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Datasets

std::vector<DatasetDomain> scan_dataset(const std::filesystem::path& root,
                                        bool require_golden_ir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw DatasetLayoutError("dataset root " + root.string() +
                             " is not a directory");
  }
  std::vector<DatasetDomain> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    DatasetDomain d;
    d.name = entry.path().filename().string();
    d.directory = entry.path();
    for (const char* required : {"domain.pddl", "meta.json"}) {
      if (!fs::is_regular_file(d.directory / required)) {
        throw DatasetLayoutError("missing " +
                                 (d.directory / required).string());
      }
    }
    const fs::path tasks_dir = d.directory / "tasks";
    if (!fs::is_directory(tasks_dir)) {
      throw DatasetLayoutError("missing " + tasks_dir.string());
    }
    for (const auto& f : fs::directory_iterator(tasks_dir)) {
      if (f.path().extension() != ".nl") continue;
      DatasetTask t;
      t.id = f.path().stem().string();
      t.description = f.path();
      t.ground_truth = tasks_dir / (t.id + ".pddl");
      if (!fs::is_regular_file(t.ground_truth)) {
        throw DatasetLayoutError("missing ground truth " +
                                 t.ground_truth.string());
      }
      const fs::path golden = tasks_dir / (t.id + ".golden.lp");
      if (fs::is_regular_file(golden)) {
        t.golden_ir = golden;
      } else if (require_golden_ir) {
        throw DatasetLayoutError("missing golden IR " + golden.string());
      }
      d.tasks.push_back(std::move(t));
    }
    std::sort(d.tasks.begin(), d.tasks.end(),
              [](const DatasetTask& a, const DatasetTask& b) {
                return natural_less(a.id, b.id);
              });
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(),
            [](const DatasetDomain& a, const DatasetDomain& b) {
              return a.name < b.name;
            });
  return out;
}

DomainPack load_dataset_pack(const DatasetDomain& domain) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(domain.directory / "rules.lp")) {
    return load_pack(domain.directory);
  }
  DomainPack pack = load_builtin_pack(domain.name);
  pack.domain_text = read_text(domain.directory / "domain.pddl");
  pack.domain = parse_domain(*pack.domain_text);
  pack.derived_rules = derive_type_rules(*pack.domain);
  if (fs::is_regular_file(domain.directory / "example.nl") &&
      fs::is_regular_file(domain.directory / "example.lp")) {
    pack.example_text = read_text(domain.directory / "example.nl");
    pack.example_ir_text = read_text(domain.directory / "example.lp");
  }
  return pack;
}

bool EvalReport::any_crash() const {
  return std::any_of(tasks.begin(), tasks.end(), [](const TaskOutcome& t) {
    return t.failure && t.failure->is_crash();
  });
}

namespace {

struct WorkItem {
  std::size_t domain = 0;
  std::size_t task = 0;
  std::size_t strategy = 0;
  std::size_t run = 0;
};

struct LoadedDomain {
  DatasetDomain layout;
  DomainPack pack;
  std::vector<TaskInput> inputs;
};

}  // namespace

EvalReport evaluate_dataset(const PipelineConfig& config,
                            const std::filesystem::path& dataset_root,
                            CompletionProvider* provider) {
  const auto start = Clock::now();
  std::vector<DatasetDomain> layout =
      scan_dataset(dataset_root, config.golden_ir);
  if (!config.domains.empty()) {
    for (const std::string& want : config.domains) {
      if (std::none_of(layout.begin(), layout.end(),
                       [&](const DatasetDomain& d) { return d.name == want; })) {
        throw DatasetLayoutError("domain " + want + " not found under " +
                                 dataset_root.string());
      }
    }
    std::erase_if(layout, [&](const DatasetDomain& d) {
      return std::find(config.domains.begin(), config.domains.end(),
                       d.name) == config.domains.end();
    });
  }

  std::vector<LoadedDomain> domains;
  for (DatasetDomain& d : layout) {
    LoadedDomain ld{d, load_dataset_pack(d), {}};
    for (const DatasetTask& t : d.tasks) {
      TaskInput in;
      in.task_id = t.id;
      in.description = read_text(t.description);
      try {
        in.ground_truth = parse_task(read_text(t.ground_truth));
      } catch (const Error& e) {
        throw DatasetLayoutError("ground truth " + t.ground_truth.string() +
                                 " does not parse: " + e.what());
      }
      if (config.golden_ir) {
        in.ir_text = read_text(*t.golden_ir);
        in.ir_source = t.golden_ir->string();
      }
      ld.inputs.push_back(std::move(in));
    }
    domains.push_back(std::move(ld));
  }

  std::vector<Strategy> strategies = config.strategies;
  if (config.golden_ir || strategies.empty()) strategies = {Strategy::kIc};
  const std::size_t runs = std::max<std::size_t>(1, config.runs);

  std::vector<WorkItem> work;
  for (std::size_t d = 0; d < domains.size(); ++d) {
    for (std::size_t t = 0; t < domains[d].inputs.size(); ++t) {
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        for (std::size_t r = 0; r < runs; ++r) work.push_back({d, t, s, r});
      }
    }
  }

  std::vector<TaskOutcome> outcomes(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      const WorkItem& w = work[i];
      const LoadedDomain& ld = domains[w.domain];
      const PipelineResult res = run_task(ld.inputs[w.task], ld.pack,
                                          strategies[w.strategy], provider);
      TaskOutcome& o = outcomes[i];
      o.domain = ld.layout.name;
      o.task_id = res.task_id;
      o.strategy = res.strategy;
      o.run = w.run;
      o.correct = res.correct();
      o.failure = res.failure;
      o.timings = res.timings;
      if (res.failure) {
        o.reason = res.failure->label + ": " + res.failure->kind;
      } else if (res.equivalence && !res.equivalence->equivalent) {
        o.reason = std::string(to_string(res.equivalence->reason));
      }
    }
  };
  const std::size_t jobs =
      std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(1, work.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  EvalReport report;
  report.tasks = std::move(outcomes);
  for (const LoadedDomain& ld : domains) {
    DomainScore ds;
    ds.name = ld.layout.name;
    for (Strategy s : strategies) {
      ds.strategies.push_back({strategy_label(s, config.golden_ir), 0, 0});
    }
    report.domains.push_back(std::move(ds));
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    StrategyScore& sc =
        report.domains[work[i].domain].strategies[work[i].strategy];
    ++sc.total;
    if (report.tasks[i].correct) ++sc.correct;
  }

  std::string strategy_names;
  for (Strategy s : strategies) {
    if (!strategy_names.empty()) strategy_names += ",";
    strategy_names += strategy_label(s, config.golden_ir);
  }
  report.meta["dataset"] = dataset_root.generic_string();
  report.meta["mode"] =
      config.golden_ir ? "golden-ir" : std::string(to_string(config.mode));
  report.meta["provider"] = config.golden_ir ? "none" : config.profile.name;
  report.meta["model"] = config.golden_ir ? "none" : config.profile.model;
  report.meta["strategies"] = strategy_names;
  report.meta["runs"] = std::to_string(runs);
  report.meta["seed"] = std::to_string(config.seed);
  report.elapsed_seconds = since(start);
  return report;
}

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

std::string report_to_json(const EvalReport& report, bool include_timings) {
  nlohmann::ordered_json j;
  j["domains"] = nlohmann::ordered_json::array();
  for (const DomainScore& d : report.domains) {
    nlohmann::ordered_json dj;
    dj["name"] = d.name;
    dj["strategies"] = nlohmann::ordered_json::array();
    for (const StrategyScore& s : d.strategies) {
      dj["strategies"].push_back({{"name", s.name},
                                  {"total", s.total},
                                  {"correct", s.correct},
                                  {"accuracy", round2(s.accuracy())}});
    }
    j["domains"].push_back(std::move(dj));
  }
  j["tasks"] = nlohmann::ordered_json::array();
  for (const TaskOutcome& t : report.tasks) {
    nlohmann::ordered_json tj;
    tj["domain"] = t.domain;
    tj["task"] = t.task_id;
    tj["strategy"] = t.strategy;
    tj["run"] = t.run;
    tj["correct"] = t.correct;
    if (!t.reason.empty()) tj["reason"] = t.reason;
    if (t.failure) {
      tj["error"] = {{"stage", t.failure->label},
                     {"kind", t.failure->kind},
                     {"message", t.failure->message}};
    }
    if (include_timings) {
      nlohmann::ordered_json timings;
      for (const StageTiming& st : t.timings) {
        timings[st.stage + "_ms"] = st.seconds * 1000.0;
      }
      tj["timings"] = std::move(timings);
    }
    j["tasks"].push_back(std::move(tj));
  }
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : report.meta) meta[k] = v;
  if (include_timings) meta["elapsed_seconds"] = report.elapsed_seconds;
  j["meta"] = std::move(meta);
  return j.dump(2) + "\n";
}

std::string render_table(const EvalReport& report) {
  std::vector<std::string> columns;
  for (const DomainScore& d : report.domains) {
    for (const StrategyScore& s : d.strategies) {
      if (std::find(columns.begin(), columns.end(), s.name) == columns.end()) {
        columns.push_back(s.name);
      }
    }
  }
  std::size_t first = std::string_view("Planning Domain").size();
  for (const DomainScore& d : report.domains) {
    first = std::max(first, d.name.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(first)) << "Planning Domain";
  for (const std::string& c : columns) {
    os << " | " << std::right << std::setw(std::max<int>(8, static_cast<int>(c.size()))) << c;
  }
  os << "\n" << std::string(first, '-');
  for (const std::string& c : columns) {
    os << "-+-" << std::string(std::max<std::size_t>(8, c.size()), '-');
  }
  os << "\n";
  for (const DomainScore& d : report.domains) {
    std::string name = d.name;
    if (!name.empty()) name[0] = static_cast<char>(std::toupper(name[0]));
    os << std::left << std::setw(static_cast<int>(first)) << name;
    for (const std::string& c : columns) {
      const int width = std::max<int>(8, static_cast<int>(c.size()));
      auto it = std::find_if(d.strategies.begin(), d.strategies.end(),
                             [&](const StrategyScore& s) { return s.name == c; });
      std::ostringstream cell;
      if (it == d.strategies.end()) {
        cell << "-";
      } else {
        cell << std::fixed << std::setprecision(2) << round2(it->accuracy());
      }
      os << " | " << std::right << std::setw(width) << cell.str();
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// External planner

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

void replace_all(std::string& s, std::string_view what,
                 const std::string& with) {
  for (std::size_t pos = s.find(what); pos != std::string::npos;
       pos = s.find(what, pos + with.size())) {
    s.replace(pos, what.size(), with);
  }
}

}  // namespace

PlannerRun invoke_planner(const std::string& command_template,
                          const std::filesystem::path& domain_file,
                          const std::filesystem::path& task_file,
                          double timeout_s) {
  if (command_template.find("{domain}") == std::string::npos ||
      command_template.find("{task}") == std::string::npos) {
    throw ConfigError("planner command must contain {domain} and {task}: " +
                      command_template);
  }
  std::string command = command_template;
  replace_all(command, "{domain}", shell_quote(domain_file.string()));
  replace_all(command, "{task}", shell_quote(task_file.string()));

  int fds[2];
  if (pipe(fds) != 0) throw PlannerError("pipe() failed");
  const auto start = Clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw PlannerError("fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(fds[1]);

  PlannerRun run;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    const double left = timeout_s - since(start);
    if (left <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    const int ready =
        poll(&p, 1, static_cast<int>(std::ceil(std::min(left, 1.0) * 1000)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const ssize_t n = read(fds[0], buf, sizeof buf);
    if (n <= 0) break;
    run.output.append(buf, static_cast<std::size_t>(n));
  }
  close(fds[0]);
  int status = 0;
  // Output closed early; the process may still be running.
  while (!timed_out) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid || (done < 0 && errno != EINTR)) break;
    if (since(start) >= timeout_s) {
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  if (timed_out) {
    kill(-pid, SIGKILL);
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
  }
  run.seconds = since(start);
  if (timed_out) {
    throw PlannerTimeout("planner exceeded " + std::to_string(timeout_s) +
                         " s: " + command);
  }
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status)
                                    : 128 + WTERMSIG(status);
  if (run.exit_code != 0) throw PlannerNonzeroExit(run.exit_code, run.output);

  std::istringstream lines(run.output);
  for (std::string line; std::getline(lines, line);) {
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] != '(') continue;
    const auto e = line.find_last_not_of(" \t\r");
    run.plan.push_back(line.substr(b, e - b + 1));
  }
  return run;
}

}  // namespace tic
