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


// End-to-end task runs, dataset evaluation and the external planner hook.

#ifndef TIC_PIPELINE_HPP_
#define TIC_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tic/domain_pack.hpp"
#include "tic/equivalence.hpp"
#include "tic/inference.hpp"
#include "tic/ir.hpp"
#include "tic/pddl.hpp"
#include "tic/translate.hpp"

namespace tic {

// Fixed stage order of every result.
inline constexpr const char* kStageNames[] = {"translate", "infer", "compile",
                                              "check"};

struct StageTiming {
  std::string stage;
  double seconds = 0;
  bool ran = false;
};

struct StageFailure {
  // "translate:g3_objects", "infer:parse", "infer", "compile", "check".
  std::string label;
  // Kind of the underlying tic::Error, or "InternalError".
  std::string kind;
  std::string message;

  // Infrastructure failures (missing cassette, transport, config) as
  // opposed to a wrong or malformed model answer.
  bool is_crash() const;
};

struct TaskInput {
  std::string task_id;
  std::string description;
  // Golden-IR mode: the translation stage is skipped.
  std::optional<std::string> ir_text;
  std::string ir_source = "ir";
  std::optional<TaskPddl> ground_truth;
};

struct PipelineResult {
  std::string task_id;
  std::string strategy;
  Program ir;
  FactBase materialized;
  std::optional<TaskPddl> task_pddl;
  std::optional<EquivalenceResult> equivalence;
  std::vector<Diagnostic> diagnostics;
  // Always four entries in kStageNames order.
  std::vector<StageTiming> timings;
  std::optional<StageFailure> failure;

  bool ok() const { return !failure.has_value(); }
  // Checker verdict; false without ground truth.
  bool correct() const;
  double seconds(std::string_view stage) const;
  double total_seconds() const;
};

// `provider` may be null when the input carries its IR.
PipelineResult run_task(const TaskInput& input, const DomainPack& pack,
                        Strategy strategy, CompletionProvider* provider);

// ---------------------------------------------------------------------------
// Configuration

struct PipelineConfig {
  std::vector<Strategy> strategies{Strategy::kIc};
  // Use tasks/pNN.golden.lp instead of calling a provider.
  bool golden_ir = false;
  ProviderProfile profile;
  ProviderMode mode = ProviderMode::kReplay;
  std::filesystem::path cassette_dir = "data/cassettes";
  std::size_t jobs = 1;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  // Restricts evaluation to these domains when non-empty.
  std::vector<std::string> domains;
  std::string planner_cmd;
  double planner_timeout_s = 60;
};

// key = value lines, optional [sections] ignored, ';' or '#' comments.
// Recognised keys: strategy, strategies, mode, cassette_dir, jobs, runs,
// seed, domains, planner_cmd, planner_timeout, and the provider keys
// provider, endpoint, model, temperature, auth_env, response_path,
// timeout. Throws ConfigError.
void apply_config_file(PipelineConfig& config,
                       const std::filesystem::path& file);

// Named built-in profile ("openai", "openai-gpt35") or a key=value file
// holding the provider keys. Throws ConfigError.
ProviderProfile resolve_provider_profile(const std::string& name_or_path);

// ---------------------------------------------------------------------------
// Datasets

struct DatasetTask {
  std::string id;
  std::filesystem::path description;
  std::filesystem::path ground_truth;
  std::optional<std::filesystem::path> golden_ir;
};

struct DatasetDomain {
  std::string name;
  std::filesystem::path directory;
  std::vector<DatasetTask> tasks;
};

// <root>/<domain>/{domain.pddl, meta.json, tasks/pNN.nl, tasks/pNN.pddl,
// tasks/pNN.golden.lp}. Throws DatasetLayoutError naming the bad path.
std::vector<DatasetDomain> scan_dataset(const std::filesystem::path& root,
                                        bool require_golden_ir);

// The domain directory itself when it holds rules.lp, otherwise the
// builtin pack of that name with the dataset's domain, metadata and
// example swapped in.
DomainPack load_dataset_pack(const DatasetDomain& domain);

struct TaskOutcome {
  std::string domain;
  std::string task_id;
  std::string strategy;
  std::size_t run = 0;
  bool correct = false;
  std::string reason;
  std::optional<StageFailure> failure;
  std::vector<StageTiming> timings;
};

struct StrategyScore {
  std::string name;
  std::size_t total = 0;
  std::size_t correct = 0;

  double accuracy() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) /
                                  static_cast<double>(total);
  }
};

struct DomainScore {
  std::string name;
  std::vector<StrategyScore> strategies;
};

struct EvalReport {
  std::vector<DomainScore> domains;
  // Ordered by (domain, task, strategy, run).
  std::vector<TaskOutcome> tasks;
  std::map<std::string, std::string> meta;
  double elapsed_seconds = 0;

  bool any_crash() const;
};

// `provider` is shared by all workers and may be null in golden-IR mode.
EvalReport evaluate_dataset(const PipelineConfig& config,
                            const std::filesystem::path& dataset_root,
                            CompletionProvider* provider);

std::string strategy_label(Strategy s, bool golden_ir);

// {domains:[{name, strategies:[{name,total,correct,accuracy}]}], tasks,
// meta}. Timing values live under "timings" and "elapsed_seconds".
std::string report_to_json(const EvalReport& report, bool include_timings = true);

// One row per domain, one accuracy column per strategy.
std::string render_table(const EvalReport& report);

// ---------------------------------------------------------------------------
// External planner

struct PlannerRun {
  std::string output;
  // Output lines that look like "(action arg ...)".
  std::vector<std::string> plan;
  int exit_code = 0;
  double seconds = 0;
};

// Runs `command_template` through /bin/sh with {domain} and {task}
// replaced by the quoted paths. Throws PlannerTimeout, PlannerNonzeroExit,
// PlannerError.
PlannerRun invoke_planner(const std::string& command_template,
                          const std::filesystem::path& domain_file,
                          const std::filesystem::path& task_file,
                          double timeout_s);

}  // namespace tic

#endif  // TIC_PIPELINE_HPP_
