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


#include <string>

#include <benchmark/benchmark.h>

#include "tic/domain_pack.hpp"
#include "tic/equivalence.hpp"
#include "tic/inference.hpp"
#include "tic/ir_parser.hpp"
#include "tic/pddl.hpp"
#include "tic/translate.hpp"

namespace {

using namespace tic;

FactBase materialize_example(const DomainPack& pack) {
  MaterializeOptions opts;
  opts.naming = pack.naming;
  return materialize(pack.example_ir(), pack.rules(), opts);
}

void BM_MaterializeExample(benchmark::State& state, const char* name) {
  const DomainPack pack = load_builtin_pack(name);
  const Program ir = pack.example_ir();
  const Program rules = pack.rules();
  MaterializeOptions opts;
  opts.naming = pack.naming;
  for (auto _ : state) {
    benchmark::DoNotOptimize(materialize(ir, rules, opts));
  }
}
BENCHMARK_CAPTURE(BM_MaterializeExample, barman, "barman");
BENCHMARK_CAPTURE(BM_MaterializeExample, floortile, "floortile");
BENCHMARK_CAPTURE(BM_MaterializeExample, termes, "termes");

// Square floortile grids; adjacency facts grow with rows * cols.
void BM_MaterializeGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::string text;
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      const std::string id =
          "tile_" + std::to_string(r) + "_" + std::to_string(c);
      text += "init(floortile_grid(" + std::to_string(r) + ", " +
              std::to_string(c) + ", " + id + ")).\n";
    }
  }
  const DomainPack pack = load_builtin_pack("floortile");
  const Program ir = parse_program(text);
  const Program rules = pack.rules();
  for (auto _ : state) {
    benchmark::DoNotOptimize(materialize(ir, rules));
  }
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_MaterializeGrid)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_CompileExample(benchmark::State& state, const char* name) {
  const DomainPack pack = load_builtin_pack(name);
  const FactBase m = materialize_example(pack);
  const CompileOptions opts = pack.compile_options();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_task(m, *pack.domain, "bench", opts));
  }
}
BENCHMARK_CAPTURE(BM_CompileExample, barman, "barman");
BENCHMARK_CAPTURE(BM_CompileExample, storage, "storage");

void BM_ParseTask(benchmark::State& state) {
  const DomainPack pack = load_builtin_pack("barman");
  const std::string text = *pack.golden_pddl;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_task(text));
  }
}
BENCHMARK(BM_ParseTask);

// Golden task against a copy with every object renamed, forcing a search.
void BM_TasksEquivalentRenamed(benchmark::State& state, const char* name) {
  const DomainPack pack = load_builtin_pack(name);
  const TaskPddl a = parse_task(*pack.golden_pddl);
  std::string text = serialize_task(a);
  for (const auto& [type, ids] : a.objects) {
    for (const std::string& id : ids) {
      std::string::size_type pos = 0;
      const std::string from = " " + id;
      while ((pos = text.find(from, pos)) != std::string::npos) {
        const char next = text[pos + from.size()];
        if (next == ' ' || next == ')' || next == '\n') {
          text.replace(pos, from.size(), " zz" + id);
          pos += from.size() + 2;
        } else {
          pos += from.size();
        }
      }
    }
  }
  const TaskPddl b = parse_task(text);
  if (a == b || !tasks_equivalent(a, b).equivalent) {
    state.SkipWithError("renaming did not produce an equivalent copy");
    return;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(tasks_equivalent(a, b));
  }
}
BENCHMARK_CAPTURE(BM_TasksEquivalentRenamed, barman, "barman");
BENCHMARK_CAPTURE(BM_TasksEquivalentRenamed, floortile, "floortile");
BENCHMARK_CAPTURE(BM_TasksEquivalentRenamed, termes, "termes");

void BM_BuildPrompt(benchmark::State& state) {
  const DomainPack pack = load_builtin_pack("barman");
  const std::string text =
      "You have 1 shaker with 3 levels, 5 shot glasses, 3 dispensers for 3 "
      "ingredients.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_prompt(PromptKind::kTicIc, pack, text));
  }
}
BENCHMARK(BM_BuildPrompt);

void BM_CassetteKey(benchmark::State& state) {
  const DomainPack pack = load_builtin_pack("barman");
  const std::string prompt =
      build_prompt(PromptKind::kTicIc, pack, "two shots").text;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cassette_key(PromptKind::kTicIc, "gpt-4", prompt));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(prompt.size()));
}
BENCHMARK(BM_CassetteKey);

}  // namespace

BENCHMARK_MAIN();
