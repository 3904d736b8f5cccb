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


// tic: translate, infer, compile, run, eval, diff, pack-check.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tic/domain_pack.hpp"
#include "tic/equivalence.hpp"
#include "tic/errors.hpp"
#include "tic/inference.hpp"
#include "tic/ir_parser.hpp"
#include "tic/pddl.hpp"
#include "tic/pipeline.hpp"
#include "tic/translate.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw tic::MissingFile(p.string() + " not found");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw tic::MissingFile("cannot write " + out);
  f << text;
}

// Options shared by every subcommand that may call a provider.
struct ProviderFlags {
  std::string profile;
  std::string mode;
  std::string cassettes;
  std::string strategy;
};

void add_provider_flags(CLI::App* cmd, ProviderFlags& f) {
  cmd->add_option("--provider-profile", f.profile,
                  "openai, openai-gpt35 or a profile file");
  cmd->add_option("--mode", f.mode, "live, replay or record")
      ->check(CLI::IsMember({"live", "replay", "record"}));
  cmd->add_option("--cassettes", f.cassettes, "cassette directory");
  cmd->add_option("--strategy", f.strategy, "ic, g3 or g1 (comma list for eval)");
}

tic::PipelineConfig make_config(const std::string& config_file,
                                const ProviderFlags& f) {
  tic::PipelineConfig c;
  c.profile = tic::resolve_provider_profile("openai");
  if (!config_file.empty()) tic::apply_config_file(c, config_file);
  if (!f.profile.empty()) c.profile = tic::resolve_provider_profile(f.profile);
  if (!f.mode.empty()) c.mode = tic::parse_provider_mode(f.mode);
  if (!f.cassettes.empty()) c.cassette_dir = f.cassettes;
  if (!f.strategy.empty()) {
    c.strategies.clear();
    std::stringstream ss(f.strategy);
    for (std::string s; std::getline(ss, s, ',');) {
      c.strategies.push_back(tic::parse_strategy(s));
    }
  }
  return c;
}

std::unique_ptr<tic::CompletionProvider> make_provider(
    const tic::PipelineConfig& c) {
  return tic::make_provider(c.profile, c.mode, c.cassette_dir);
}

tic::Program read_ir(const std::string& path) {
  return tic::parse_program(slurp(path), path);
}

tic::FactBase infer(const tic::Program& ir, const tic::DomainPack& pack) {
  tic::MaterializeOptions o;
  o.naming = pack.naming;
  return tic::materialize(ir, pack.rules(), o);
}

const tic::DomainModel& domain_of(const tic::DomainPack& pack) {
  if (!pack.domain) {
    throw tic::ConfigError("pack " + pack.name + " has no domain.pddl");
  }
  return *pack.domain;
}

void print_diagnostics(const std::vector<tic::Diagnostic>& diags) {
  for (const tic::Diagnostic& d : diags) {
    std::cerr << "warning: " << d.message << "\n";
  }
}

ordered_json equivalence_json(const tic::EquivalenceResult& r) {
  ordered_json j;
  j["equivalent"] = r.equivalent;
  j["reason"] = std::string(tic::to_string(r.reason));
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.witness) j["witness"] = ordered_json::parse(r.witness->to_json());
  return j;
}

// ---------------------------------------------------------------------------

int cmd_translate(const std::string& config_file, const ProviderFlags& pf,
                  const std::string& task, const std::string& pack_name,
                  const std::string& out, bool json) {
  const tic::PipelineConfig c = make_config(config_file, pf);
  const tic::DomainPack pack = tic::resolve_pack(pack_name);
  auto provider = make_provider(c);
  const tic::Extraction ex = tic::run_translation(
      c.strategies.front(), *provider, pack, slurp(task));
  print_diagnostics(ex.diagnostics);
  if (!json) {
    emit(tic::serialize_program(ex.ir), out);
    return 0;
  }
  ordered_json j;
  j["strategy"] = std::string(tic::to_string(c.strategies.front()));
  j["cardinalities"] = ex.cardinalities;
  j["named_objects"] = ex.named_objects;
  j["ir"] = tic::serialize_program(ex.ir);
  emit(j.dump(2) + "\n", out);
  return 0;
}

int cmd_infer(const std::string& ir_path, const std::string& pack_name,
              const std::string& out, bool json) {
  const tic::DomainPack pack = tic::resolve_pack(pack_name);
  const tic::Program ir = read_ir(ir_path);
  print_diagnostics(tic::validate_program(ir, pack));
  const tic::FactBase facts = infer(ir, pack);
  if (!json) {
    emit(tic::serialize_program(facts.to_program()), out);
    return 0;
  }
  ordered_json j = ordered_json::array();
  for (const auto& [atom, prov] : facts) {
    j.push_back({{"fact", atom.to_string()},
                 {"provenance", std::string(tic::to_string(prov))}});
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

int cmd_compile(const std::string& ir_path, const std::string& pack_name,
                const std::string& name, const std::string& out) {
  const tic::DomainPack pack = tic::resolve_pack(pack_name);
  const tic::Program ir = read_ir(ir_path);
  print_diagnostics(tic::validate_program(ir, pack));
  const tic::TaskPddl task = tic::compile_task(
      infer(ir, pack), domain_of(pack), name, pack.compile_options());
  emit(tic::serialize_task(task), out);
  return 0;
}

struct RunFlags {
  std::string task;
  std::string pack;
  std::string from_ir;
  std::string ground_truth;
  std::string out;
  std::string planner_cmd;
  double planner_timeout = 60;
  bool json = false;
};

int cmd_run(const std::string& config_file, const ProviderFlags& pf,
            const RunFlags& f) {
  tic::PipelineConfig c = make_config(config_file, pf);
  if (!f.planner_cmd.empty()) c.planner_cmd = f.planner_cmd;
  const tic::DomainPack pack = tic::resolve_pack(f.pack);

  tic::TaskInput in;
  in.task_id = f.task.empty() ? fs::path(f.from_ir).stem().string()
                              : fs::path(f.task).stem().string();
  if (!f.task.empty()) in.description = slurp(f.task);
  if (!f.from_ir.empty()) {
    in.ir_text = slurp(f.from_ir);
    in.ir_source = f.from_ir;
  }
  if (!f.ground_truth.empty()) {
    in.ground_truth = tic::parse_task(slurp(f.ground_truth));
  }
  std::unique_ptr<tic::CompletionProvider> provider;
  if (!in.ir_text) provider = make_provider(c);
  const tic::PipelineResult r =
      tic::run_task(in, pack, c.strategies.front(), provider.get());
  print_diagnostics(r.diagnostics);

  std::optional<tic::PlannerRun> plan;
  std::string planner_error;
  if (r.ok() && r.task_pddl && !c.planner_cmd.empty()) {
    const fs::path dir = fs::temp_directory_path() /
                         ("tic-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path dfile = dir / "domain.pddl";
    const fs::path tfile = dir / "task.pddl";
    std::ofstream(dfile) << *pack.domain_text;
    std::ofstream(tfile) << tic::serialize_task(*r.task_pddl);
    try {
      plan = tic::invoke_planner(c.planner_cmd, dfile, tfile,
                                 f.planner_timeout > 0 ? f.planner_timeout
                                                       : c.planner_timeout_s);
    } catch (const tic::Error& e) {
      planner_error = std::string(e.kind()) + ": " + e.what();
    }
    fs::remove_all(dir);
  }

  if (f.json) {
    ordered_json j;
    j["task"] = r.task_id;
    j["strategy"] = r.strategy;
    j["ok"] = r.ok();
    if (r.failure) {
      j["error"] = {{"stage", r.failure->label},
                    {"kind", r.failure->kind},
                    {"message", r.failure->message}};
    }
    if (r.task_pddl) j["pddl"] = tic::serialize_task(*r.task_pddl);
    if (r.equivalence) j["equivalence"] = equivalence_json(*r.equivalence);
    ordered_json timings;
    for (const tic::StageTiming& t : r.timings) {
      timings[t.stage + "_ms"] = t.seconds * 1000.0;
    }
    j["timings"] = timings;
    if (plan) j["plan"] = plan->plan;
    if (!planner_error.empty()) j["planner_error"] = planner_error;
    emit(j.dump(2) + "\n", f.out);
  } else {
    if (r.task_pddl) emit(tic::serialize_task(*r.task_pddl), f.out);
    if (r.failure) {
      std::cerr << "error [" << r.failure->label << "] " << r.failure->kind
                << ": " << r.failure->message << "\n";
    }
    if (r.equivalence) {
      std::cerr << (r.equivalence->equivalent ? "equivalent to ground truth\n"
                                              : "NOT equivalent (" +
                                                    std::string(tic::to_string(
                                                        r.equivalence->reason)) +
                                                    ")\n");
    }
    if (plan) {
      std::cerr << "plan (" << plan->plan.size() << " steps):\n";
      for (const std::string& a : plan->plan) std::cerr << "  " << a << "\n";
    }
    if (!planner_error.empty()) std::cerr << "planner: " << planner_error << "\n";
  }
  if (!r.ok()) return kExitFailure;
  if (r.equivalence && !r.equivalence->equivalent) return kExitFailure;
  return planner_error.empty() ? 0 : kExitFailure;
}

struct EvalFlags {
  std::string dataset;
  bool golden_ir = false;
  std::size_t jobs = 0;
  std::size_t runs = 0;
  std::vector<std::string> domains;
  std::string json_out;
  bool no_timings = false;
  bool quiet = false;
};

int cmd_eval(const std::string& config_file, const ProviderFlags& pf,
             const EvalFlags& f) {
  tic::PipelineConfig c = make_config(config_file, pf);
  if (f.golden_ir) c.golden_ir = true;
  if (f.jobs > 0) c.jobs = f.jobs;
  if (f.runs > 0) c.runs = f.runs;
  if (!f.domains.empty()) c.domains = f.domains;
  std::unique_ptr<tic::CompletionProvider> provider;
  if (!c.golden_ir) provider = make_provider(c);
  const tic::EvalReport report =
      tic::evaluate_dataset(c, f.dataset, provider.get());
  if (!f.json_out.empty()) {
    emit(tic::report_to_json(report, !f.no_timings), f.json_out);
  }
  if (!f.quiet) {
    std::cout << tic::render_table(report);
    for (const tic::TaskOutcome& t : report.tasks) {
      if (!t.correct) {
        std::cout << "  " << t.domain << "/" << t.task_id << " [" << t.strategy
                  << " run " << t.run << "]: " << t.reason << "\n";
      }
    }
  }
  return report.any_crash() ? kExitFailure : 0;
}

int cmd_diff(const std::string& a_path, const std::string& b_path,
             bool oracle, bool json) {
  const tic::TaskPddl a = tic::parse_task(slurp(a_path));
  const tic::TaskPddl b = tic::parse_task(slurp(b_path));
  const tic::EquivalenceResult r = tic::tasks_equivalent(a, b);
  std::optional<bool> brute;
  std::string oracle_note;
  if (oracle) {
    try {
      brute = tic::brute_force_equivalent(a, b);
    } catch (const tic::SearchSpaceTooLarge& e) {
      oracle_note = e.what();
    }
  }
  if (json) {
    ordered_json j = equivalence_json(r);
    if (brute) j["oracle"] = *brute;
    if (!oracle_note.empty()) j["oracle_skipped"] = oracle_note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.equivalent ? "equivalent" : "different") << " ("
              << tic::to_string(r.reason) << ")";
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << "\n";
    if (r.witness && !r.witness->is_identity()) {
      for (const auto& [type, m] : r.witness->by_type) {
        for (const auto& [from, to] : m) {
          if (from != to) std::cout << "  " << from << " -> " << to << "\n";
        }
      }
    }
    if (brute) {
      std::cout << "oracle: " << (*brute ? "equivalent" : "different") << "\n";
    } else if (!oracle_note.empty()) {
      std::cout << "oracle skipped: " << oracle_note << "\n";
    }
  }
  if (brute && *brute != r.equivalent) return kExitFailure;
  return r.equivalent ? 0 : kExitFailure;
}

int cmd_pack_check(const std::string& pack_name) {
  const tic::DomainPack pack = tic::resolve_pack(pack_name);
  std::cout << "pack " << pack.name << ": " << pack.rules().rules.size()
            << " rules (" << pack.derived_rules.size() << " derived), "
            << pack.object_types.size() << " object types, "
            << pack.predicates.size() << " predicates\n";
  if (!pack.domain) {
    std::cout << "no domain.pddl\n";
    return kExitFailure;
  }
  for (const std::string& w : pack.domain->warnings) {
    std::cout << "domain warning: " << w << "\n";
  }
  int status = 0;
  const tic::Program rules = pack.rules();
  try {
    const tic::Strata strata = tic::stratify(rules);
    std::cout << strata.size() << " strata\n";
  } catch (const tic::Unstratifiable& e) {
    std::cout << "rules: " << e.what() << "\n";
    status = kExitFailure;
  }
  for (const tic::Diagnostic& d : tic::validate_program(rules, pack)) {
    std::cout << "rules: " << d.message << "\n";
    status = kExitFailure;
  }
  // Predicates the rules read, bare or wrapped in init/goal.
  std::set<std::string> consumed;
  for (const tic::Rule& r : rules.rules) {
    for (const tic::BodyElement& e : r.body) {
      if (!e.is_literal()) continue;
      const tic::Atom& a = e.literal.atom;
      consumed.insert(a.predicate);
      if ((a.predicate == "init" || a.predicate == "goal") &&
          a.arity() == 1 && a.args[0].is_atom_shaped()) {
        consumed.insert(a.args[0].name());
      }
    }
  }
  for (const tic::PredicateInfo& p : pack.predicates) {
    if (!pack.domain->resolve_predicate(p.predicate)) {
      if (consumed.count(p.predicate)) {
        std::cout << "predicate " << p.predicate
                  << " is IR vocabulary read by the rules\n";
        continue;
      }
      std::cout << "predicate " << p.predicate
                << " is neither declared by the domain nor read by a rule\n";
      status = kExitFailure;
    }
  }
  if (!pack.example_ir_text) {
    std::cout << "no in-context example\n";
    return status;
  }
  const tic::Program ir = pack.example_ir();
  for (const tic::Diagnostic& d : tic::validate_program(ir, pack)) {
    std::cout << "example: " << d.message << "\n";
    status = kExitFailure;
  }
  const tic::TaskPddl task = tic::compile_task(
      infer(ir, pack), *pack.domain, "example", pack.compile_options());
  if (pack.golden_pddl) {
    const tic::EquivalenceResult r =
        tic::tasks_equivalent(task, tic::parse_task(*pack.golden_pddl));
    std::cout << "example vs golden.pddl: "
              << (r.equivalent ? "equivalent" : "DIFFERENT") << "\n";
    if (!r.equivalent) status = kExitFailure;
  } else {
    std::cout << "example compiles (" << task.object_count() << " objects, "
              << task.init.size() << " init atoms, " << task.goal.size()
              << " goal atoms)\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate natural-language planning tasks to PDDL"};
  app.require_subcommand(1);
  std::string config_file;
  app.add_option("--config", config_file, "key=value config file")
      ->check(CLI::ExistingFile);

  ProviderFlags pf;
  std::string pack, out, name = "task";
  bool json = false;

  auto* translate = app.add_subcommand("translate", "Task text to IR");
  std::string task;
  translate->add_option("task", task, "task description (.nl)")
      ->required()->check(CLI::ExistingFile);
  translate->add_option("--domain-pack", pack, "builtin name or directory")
      ->required();
  add_provider_flags(translate, pf);
  translate->add_option("--out", out);
  translate->add_flag("--json", json);

  auto* infer_cmd = app.add_subcommand("infer", "Materialize an IR");
  std::string ir_path;
  infer_cmd->add_option("ir", ir_path)->required()->check(CLI::ExistingFile);
  infer_cmd->add_option("--domain-pack", pack)->required();
  infer_cmd->add_option("--out", out);
  infer_cmd->add_flag("--json", json);

  auto* compile = app.add_subcommand("compile", "IR to task PDDL");
  compile->add_option("ir", ir_path)->required()->check(CLI::ExistingFile);
  compile->add_option("--domain-pack", pack)->required();
  compile->add_option("--name", name, "problem name");
  compile->add_option("--out", out);

  auto* run = app.add_subcommand("run", "Full pipeline for one task");
  RunFlags rf;
  run->add_option("task", rf.task, "task description (.nl)")
      ->check(CLI::ExistingFile);
  run->add_option("--domain-pack", rf.pack)->required();
  run->add_option("--from-ir", rf.from_ir, "skip translation, read this IR")
      ->check(CLI::ExistingFile);
  run->add_option("--ground-truth", rf.ground_truth, "check against this PDDL")
      ->check(CLI::ExistingFile);
  add_provider_flags(run, pf);
  run->add_option("--planner-cmd", rf.planner_cmd,
                  "e.g. \"fast-downward {domain} {task} --search 'astar(lmcut())'\"");
  run->add_option("--planner-timeout", rf.planner_timeout, "seconds");
  run->add_option("--out", rf.out);
  run->add_flag("--json", rf.json);

  auto* eval = app.add_subcommand("eval", "Evaluate a dataset");
  EvalFlags ef;
  eval->add_option("dataset", ef.dataset)->required()->check(CLI::ExistingDirectory);
  add_provider_flags(eval, pf);
  eval->add_flag("--golden-ir", ef.golden_ir, "use tasks/pNN.golden.lp");
  eval->add_option("--jobs", ef.jobs);
  eval->add_option("--runs", ef.runs);
  eval->add_option("--domain", ef.domains, "restrict to these domains");
  eval->add_option("--json", ef.json_out, "write the JSON report here");
  eval->add_flag("--no-timings", ef.no_timings, "omit timing fields from JSON");
  eval->add_flag("--quiet", ef.quiet);

  auto* diff = app.add_subcommand("diff", "Compare two task PDDL files");
  std::string a_path, b_path;
  bool oracle = false;
  diff->add_option("a", a_path)->required()->check(CLI::ExistingFile);
  diff->add_option("b", b_path)->required()->check(CLI::ExistingFile);
  diff->add_flag("--oracle", oracle, "cross-check with exhaustive search");
  diff->add_flag("--json", json);

  auto* pack_check = app.add_subcommand("pack-check", "Validate a domain pack");
  pack_check->add_option("pack", pack)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*translate) return cmd_translate(config_file, pf, task, pack, out, json);
    if (*infer_cmd) return cmd_infer(ir_path, pack, out, json);
    if (*compile) return cmd_compile(ir_path, pack, name, out);
    if (*run) {
      if (rf.task.empty() && rf.from_ir.empty()) {
        std::cerr << "run: give a task description or --from-ir\n";
        return kExitUsage;
      }
      return cmd_run(config_file, pf, rf);
    }
    if (*eval) return cmd_eval(config_file, pf, ef);
    if (*diff) return cmd_diff(a_path, b_path, oracle, json);
    if (*pack_check) return cmd_pack_check(pack);
  } catch (const tic::StageError& e) {
    std::cerr << "error [" << e.stage() << "] " << e.cause_kind() << ": "
              << e.what() << "\n";
    return kExitFailure;
  } catch (const tic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tic::Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
