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


// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "test_support.hpp"
#include "tic/domain_pack.hpp"
#include "tic/equivalence.hpp"
#include "tic/errors.hpp"
#include "tic/inference.hpp"
#include "tic/ir_parser.hpp"
#include "tic/pddl.hpp"
#include "tic/pipeline.hpp"
#include "tic/resources.hpp"
#include "tic/translate.hpp"

namespace tic {
namespace {

namespace fs = std::filesystem;
using testing::read_text;
using testing::source_path;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failed expectations of one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failed: " + messages_};
  }

 private:
  int failures_ = 0;
  std::string messages_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

Atom pattern(const std::string& text) {
  return parse_program("q :- " + text + ".").rules.at(0).body.at(0).literal.atom;
}

FactBase run(const DomainPack& pack, const std::string& ir) {
  MaterializeOptions opts;
  opts.naming = pack.naming;
  return materialize(parse_program(ir), pack.rules(), opts);
}

// ---------------------------------------------------------------------------

Outcome golden_barman() {
  Checker c;
  const std::string ir_text =
      read_text(source_path("tests/fixtures/barman/p01_ir.lp"));
  const TaskPddl truth =
      parse_task(read_text(source_path("tests/fixtures/barman/p01_truth.pddl")));
  const DomainPack pack = load_builtin_pack("barman");
  const auto t0 = std::chrono::steady_clock::now();
  const FactBase m = run(pack, ir_text);
  const TaskPddl task =
      compile_task(m, *pack.domain, truth.problem_name, pack.compile_options());
  const EquivalenceResult r = tasks_equivalent(task, truth);
  const double elapsed = seconds_since(t0);

  c.expect(r.equivalent, "not equivalent: " + r.detail);
  const auto shots = task.objects.find("shot");
  c.expect(shots != task.objects.end() &&
               std::count(shots->second.begin(), shots->second.end(),
                          "shot5") == 1,
           "shot5 not declared");
  c.expect(m.provenance(Atom("object", {Term::symbol("shot5"),
                                        Term::symbol("shot")})) ==
               Provenance::kGenerated,
           "shot5 not generated");
  c.expect(task.init.count(PddlAtom{"clean", {"shot5"}}) == 1,
           "(clean shot5) missing");
  c.expect(elapsed < 1.0, "took " + fmt(elapsed) + " s");
  return c.done("equivalent to ground truth with generated shot5 in " +
                fmt(elapsed) + " s");
}

Outcome cardinality_expansion() {
  Checker c;
  const DomainPack pack = load_builtin_pack("barman");
  auto named = [](int n) {
    std::string ir = "cardinality(shot, 5).\n";
    for (int i = 1; i <= n; ++i) {
      ir += "object(shot" + std::to_string(i) + ", shot).\n";
    }
    return ir;
  };
  // Repeated with shuffled IR order: the generated count never varies.
  std::mt19937_64 rng(5);
  std::set<std::size_t> generated_counts;
  for (int k = 0; k < 20; ++k) {
    Program ir = parse_program(named(4));
    std::shuffle(ir.rules.begin(), ir.rules.end(), rng);
    MaterializeOptions opts;
    opts.naming = pack.naming;
    const FactBase m = materialize(ir, pack.rules(), opts);
    std::size_t generated = 0;
    for (const auto& [a, prov] : m) {
      if (prov == Provenance::kGenerated && a.predicate == "object") {
        ++generated;
      }
    }
    generated_counts.insert(generated);
    c.expect(query(m, pattern("object(X, shot)")).size() == 5,
             "shot count is not 5");
  }
  c.expect(generated_counts == std::set<std::size_t>{1},
           "generated object counts differ from {1}");
  bool raised = false;
  try {
    run(pack, named(6));
  } catch (const CardinalityViolation& e) {
    raised = e.named() == 6 && e.required() == 5;
  }
  c.expect(raised, "6 named shots did not raise CardinalityViolation");
  return c.done("4 named shots + 1 generated (20 runs), 6 named shots raise");
}

Outcome map_expansion() {
  Checker c;
  const std::string objects =
      "init(clean(dispenser1)). object(dispenser1, dispenser). "
      "object(dispenser2, dispenser). object(dispenser3, dispenser). "
      "object(ingredient1, ingredient). object(ingredient2, ingredient). ";
  const DomainPack pack = load_builtin_pack("barman");
  const FactBase m =
      run(pack, objects +
                    "object(ingredient3, ingredient). "
                    "init(map(dispenser, dispenses, ingredient)).");
  const auto pairs = query(m, pattern("init(dispenses(D, I))"));
  std::set<std::string> ds;
  std::set<std::string> is;
  for (const Binding& b : pairs) {
    ds.insert(b.at("D").name());
    is.insert(b.at("I").name());
  }
  c.expect(pairs.size() == 3, std::to_string(pairs.size()) + " facts");
  c.expect(ds.size() == 3 && is.size() == 3, "not a bijection");
  c.expect(ds == std::set<std::string>{"dispenser1", "dispenser2",
                                       "dispenser3"},
           "left side wrong");
  c.expect(is == std::set<std::string>{"ingredient1", "ingredient2",
                                       "ingredient3"},
           "right side wrong");
  bool raised = false;
  try {
    run(pack, objects + "init(map(dispenser, dispenses, ingredient)).");
  } catch (const MapArityMismatch&) {
    raised = true;
  }
  c.expect(raised, "3 vs 2 objects did not raise MapArityMismatch");
  return c.done("3 dispenses facts forming a bijection, 3 vs 2 raises");
}

std::string tile(int r, int c) {
  return "tile_" + std::to_string(r) + "_" + std::to_string(c);
}

std::set<std::string> wrapped_pairs(const FactBase& fb,
                                    const std::string& pred) {
  std::set<std::string> out;
  for (const Binding& b : query(fb, pattern("init(" + pred + "(A, B))"))) {
    out.insert(b.at("A").name() + " " + b.at("B").name());
  }
  return out;
}

Outcome grid_derivation() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  const DomainPack pack = load_builtin_pack("floortile");
  auto grid = [](int rows, int cols) {
    std::string ir;
    for (int r = 1; r <= rows; ++r) {
      for (int col = 1; col <= cols; ++col) {
        ir += "init(floortile_grid(" + std::to_string(r) + ", " +
              std::to_string(col) + ", " + tile(r, col) + ")).\n";
      }
    }
    return ir;
  };
  for (int rows = 1; rows <= 6; ++rows) {
    for (int cols = 1; cols <= 6; ++cols) {
      const std::string at = std::to_string(rows) + "x" + std::to_string(cols);
      const FactBase m = run(pack, grid(rows, cols));
      std::map<std::string, std::set<std::string>> want;
      for (int r = 1; r <= rows; ++r) {
        for (int col = 1; col <= cols; ++col) {
          if (r > 1) {
            want["up"].insert(tile(r, col) + " " + tile(r - 1, col));
            want["down"].insert(tile(r - 1, col) + " " + tile(r, col));
          }
          if (col > 1) {
            want["right"].insert(tile(r, col) + " " + tile(r, col - 1));
            want["left"].insert(tile(r, col - 1) + " " + tile(r, col));
          }
        }
      }
      const std::size_t vertical = static_cast<std::size_t>((rows - 1) * cols);
      const std::size_t horizontal =
          static_cast<std::size_t>(rows * (cols - 1));
      for (const char* dir : {"up", "down", "left", "right"}) {
        const std::set<std::string> got = wrapped_pairs(m, dir);
        const bool is_vertical =
            std::string(dir) == "up" || std::string(dir) == "down";
        c.expect(got.size() == (is_vertical ? vertical : horizontal),
                 at + " " + dir + " count");
        c.expect(got == want[dir], at + " " + dir + " differs from oracle");
      }
    }
  }
  const FactBase m = run(pack, grid(5, 3) +
                                   "init(robot_at(robot1, tile_1_1)).\n"
                                   "init(robot_at(robot2, tile_2_3)).\n");
  const std::size_t clear = query(m, pattern("init(clear(T))")).size();
  c.expect(clear == 13, std::to_string(clear) + " clear tiles on 5x3");
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 5.0, "took " + fmt(elapsed) + " s");
  return c.done("36 grids match the double loop, 13 clear on 5x3, " +
                fmt(elapsed) + " s");
}

Outcome equivalence_differential() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t positives = 0;
  std::size_t total = 0;
  for (int i = 0; i < 600; ++i) {
    const TaskPddl a = testing::random_task(rng);
    TaskPddl b;
    switch (i % 3) {
      case 0:
        b = testing::shuffle_names(a, rng);
        break;
      case 1:
        b = testing::mutate_one_atom(testing::shuffle_names(a, rng), rng);
        break;
      default:
        b = testing::random_task(rng);
        b.objects = a.objects;
        break;
    }
    const bool want = testing::reference_equivalent(a, b);
    c.expect(tasks_equivalent(a, b).equivalent == want,
             "disagreement on case " + std::to_string(i));
    positives += want ? 1 : 0;
    ++total;
  }
  const double elapsed = seconds_since(t0);
  c.expect(positives > 0 && positives < total, "one-sided sample");
  c.expect(elapsed < 60.0, "took " + fmt(elapsed) + " s");
  return c.done(std::to_string(total) + " cases (" +
                std::to_string(positives) +
                " equivalent) agree with brute force in " + fmt(elapsed) +
                " s");
}

std::vector<std::pair<std::string, TaskPddl>> shipped_truths() {
  std::vector<fs::path> paths = {
      source_path("tests/fixtures/barman/p01_truth.pddl")};
  for (const auto& d : fs::directory_iterator(source_path("data/dataset"))) {
    for (const auto& f : fs::directory_iterator(d.path() / "tasks")) {
      if (f.path().extension() == ".pddl") paths.push_back(f.path());
    }
  }
  for (const auto& d : fs::directory_iterator(source_path("data/packs"))) {
    paths.push_back(d.path() / "golden.pddl");
  }
  std::sort(paths.begin(), paths.end());
  std::vector<std::pair<std::string, TaskPddl>> out;
  for (const fs::path& p : paths) {
    out.emplace_back(fs::relative(p, source_path("")).generic_string(),
                     parse_task(read_text(p)));
  }
  return out;
}

// Reverses the order of the atom lines inside every section.
std::string shuffle_atom_lines(const std::string& text, std::mt19937_64& rng) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> atoms;
  std::string out;
  while (std::getline(in, line)) {
    if (line.rfind("    (", 0) == 0) {
      atoms.push_back(line);
      continue;
    }
    std::shuffle(atoms.begin(), atoms.end(), rng);
    for (const std::string& a : atoms) out += a + "\n";
    atoms.clear();
    out += line + "\n";
  }
  return out;
}

Outcome checker_metamorphic() {
  Checker c;
  std::mt19937_64 rng(77);
  const auto tasks = shipped_truths();
  for (const auto& [name, t] : tasks) {
    c.expect(tasks_equivalent(t, t).equivalent, name + " not reflexive");
    const TaskPddl renamed = testing::shuffle_names(t, rng);
    c.expect(tasks_equivalent(t, renamed).equivalent,
             name + " not invariant under renaming");
    c.expect(tasks_equivalent(renamed, t).equivalent,
             name + " renaming not symmetric");
    const TaskPddl reordered =
        parse_task(shuffle_atom_lines(serialize_task(t), rng));
    c.expect(tasks_equivalent(t, reordered).equivalent,
             name + " not invariant under reordering");
    const TaskPddl mutated = testing::mutate_one_atom(t, rng);
    c.expect(tasks_equivalent(t, mutated).equivalent ==
                 tasks_equivalent(mutated, t).equivalent,
             name + " mutation not symmetric");
  }
  std::size_t pairs = 0;
  for (const auto& [na, a] : tasks) {
    for (const auto& [nb, b] : tasks) {
      if (a.domain_name != b.domain_name) continue;
      ++pairs;
      c.expect(tasks_equivalent(a, b).equivalent ==
                   tasks_equivalent(b, a).equivalent,
               na + " vs " + nb + " not symmetric");
    }
  }
  return c.done(std::to_string(tasks.size()) + " tasks, " +
                std::to_string(pairs) + " same-domain pairs");
}

Outcome prompt_golden_files() {
  Checker c;
  const DomainPack barman = load_builtin_pack("barman");
  const DomainPack imaginary =
      resolve_pack(source_path("tests/fixtures/imaginary").string());
  const std::string text(*embedded_file("prompts/imaginary/text.txt"));
  Extraction upstream;
  upstream.named_objects = parse_named_objects(
      *embedded_file("prompts/imaginary/objects_answer.txt"));
  struct Case {
    std::string fixture;
    std::string built;
  };
  const std::vector<Case> cases = {
      {"tic_ic_barman.txt",
       build_prompt(PromptKind::kTicIc, barman,
                    read_text(source_path("tests/fixtures/barman/p01.nl")))
           .text},
      {"g3_cardinality_imaginary.txt",
       build_prompt(PromptKind::kG3Cardinality, imaginary, text).text},
      {"g3_objects_imaginary.txt",
       build_prompt(PromptKind::kG3Objects, imaginary, text).text},
      {"g3_rules_imaginary.txt",
       build_prompt(PromptKind::kG3Rules, imaginary, text, &upstream).text},
      {"g1_imaginary.txt", build_prompt(PromptKind::kG1, imaginary, text).text},
  };
  for (const Case& k : cases) {
    const std::string want =
        read_text(source_path("tests/fixtures/prompts/" + k.fixture));
    c.expect(k.built == want, k.fixture + " differs");
  }
  return c.done("5 prompts byte-identical to fixtures");
}

PipelineConfig replay_config() {
  PipelineConfig config;
  config.strategies = {Strategy::kIc};
  config.mode = ProviderMode::kReplay;
  config.cassette_dir = source_path("data/cassettes");
  return config;
}

Outcome replay_end_to_end() {
  Checker c;
  const std::uint64_t before = HttpProvider::request_count();
  const auto t0 = std::chrono::steady_clock::now();
  const PipelineConfig config = replay_config();
  auto provider =
      make_provider(config.profile, config.mode, config.cassette_dir);
  const EvalReport report =
      evaluate_dataset(config, source_path("data/dataset"), provider.get());
  const double elapsed = seconds_since(t0);
  c.expect(report.domains.size() == 7,
           std::to_string(report.domains.size()) + " domains");
  for (const DomainScore& d : report.domains) {
    for (const StrategyScore& s : d.strategies) {
      c.expect(s.name == "TIC-IC", "unexpected strategy " + s.name);
      c.expect(s.total >= 2, d.name + " has " + std::to_string(s.total) +
                                 " tasks");
      c.expect(s.correct == s.total, d.name + " accuracy " +
                                         fmt(s.accuracy(), 2));
    }
  }
  const std::uint64_t calls = HttpProvider::request_count() - before;
  c.expect(calls == 0, std::to_string(calls) + " network calls");
  c.expect(elapsed < 30.0, "took " + fmt(elapsed) + " s");
  return c.done(std::to_string(report.tasks.size()) +
                " tasks, 100% on all 7 domains, 0 network calls, " +
                fmt(elapsed) + " s");
}

Outcome inference_oracle() {
  Checker c;
  std::mt19937_64 rng(31337);
  const int n = 250;
  for (int i = 0; i < n; ++i) {
    const testing::RandomProgram rp = testing::random_program(rng);
    c.expect(rp.fact_count <= 30 && rp.rule_count <= 10,
             "program " + std::to_string(i) + " too large");
    const Program p = parse_program(rp.text);
    c.expect(testing::fact_strings(materialize(p, Program{})) ==
                 testing::naive_model(p, rp.level),
             "program " + std::to_string(i) + " differs");
  }
  return c.done(std::to_string(n) + " random programs match the naive model");
}

// Drops timing keys at any depth.
void mask_timings(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("timings");
    j.erase("elapsed_seconds");
    for (auto& [k, v] : j.items()) mask_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) mask_timings(v);
  }
}

Outcome determinism() {
  Checker c;
  PipelineConfig config;
  config.golden_ir = true;
  config.jobs = 4;
  std::vector<std::string> masked;
  for (int run = 0; run < 2; ++run) {
    nlohmann::json j = nlohmann::json::parse(report_to_json(
        evaluate_dataset(config, source_path("data/dataset"), nullptr)));
    mask_timings(j);
    masked.push_back(j.dump(2));
  }
  c.expect(masked[0] == masked[1], "reports differ");
  c.expect(masked[0].find("\"correct\"") != std::string::npos,
           "report carries no outcomes");
  return c.done("two golden-IR reports identical after masking (" +
                std::to_string(masked[0].size()) + " bytes)");
}

Outcome translate_dominates() {
  Checker c;
  const PipelineConfig config = replay_config();
  auto replay = make_provider(config.profile, config.mode, config.cassette_dir);
  FunctionProvider slow(replay->model(), [&](const PromptSpec& p) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    return replay->complete(p);
  });
  const EvalReport report =
      evaluate_dataset(config, source_path("data/dataset"), &slow);
  double min_share = 1.0;
  double max_rest = 0.0;
  for (const TaskOutcome& t : report.tasks) {
    double total = 0;
    double translate = 0;
    for (const StageTiming& s : t.timings) {
      total += s.seconds;
      if (s.stage == "translate") translate = s.seconds;
    }
    const double share = total > 0 ? translate / total : 0;
    min_share = std::min(min_share, share);
    max_rest = std::max(max_rest, total - translate);
    c.expect(t.correct, t.domain + "/" + t.task_id + " incorrect");
    c.expect(share > 0.9, t.domain + "/" + t.task_id + " translate share " +
                              fmt(share));
  }
  return c.done("minimum translate share " + fmt(100 * min_share, 2) +
                "% over " + std::to_string(report.tasks.size()) +
                " tasks, slowest infer+compile+check " +
                fmt(1000 * max_rest, 2) + " ms");
}

}  // namespace
}  // namespace tic

int main() {
  using Criterion = std::pair<const char*, std::function<tic::Outcome()>>;
  const std::vector<Criterion> criteria = {
      {"golden Barman pipeline", tic::golden_barman},
      {"cardinality expansion", tic::cardinality_expansion},
      {"map expansion", tic::map_expansion},
      {"grid derivation", tic::grid_derivation},
      {"equivalence differential test", tic::equivalence_differential},
      {"checker metamorphic properties", tic::checker_metamorphic},
      {"prompt golden files", tic::prompt_golden_files},
      {"replay end-to-end", tic::replay_end_to_end},
      {"inference oracle equivalence", tic::inference_oracle},
      {"determinism", tic::determinism},
      {"translate-stage time share", tic::translate_dominates},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    tic::Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed;
}
