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


#include <memory>
#include <string>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tic/domain_pack.hpp"
#include "tic/equivalence.hpp"
#include "tic/errors.hpp"
#include "tic/inference.hpp"
#include "tic/ir_parser.hpp"
#include "tic/pipeline.hpp"
#include "tic/resources.hpp"
#include "tic/translate.hpp"

namespace tic {
namespace {

using testing::read_text;
using testing::source_path;

std::string imaginary_text() {
  return std::string(*embedded_file("prompts/imaginary/text.txt"));
}

DomainPack imaginary_pack() {
  return resolve_pack(source_path("tests/fixtures/imaginary").string());
}

DomainPack dataset_pack(const std::string& name) {
  for (const DatasetDomain& d :
       scan_dataset(source_path("data/dataset"), false)) {
    if (d.name == name) return load_dataset_pack(d);
  }
  throw std::runtime_error("no dataset domain " + name);
}

std::shared_ptr<CassetteStore> shipped_cassettes() {
  return std::make_shared<CassetteStore>(source_path("data/cassettes"));
}

// Prompts are compared byte for byte against the stored transcriptions.
TEST(BuildPrompt, IcBarman) {
  const DomainPack pack = load_builtin_pack("barman");
  const PromptSpec p = build_prompt(
      PromptKind::kTicIc, pack,
      read_text(source_path("tests/fixtures/barman/p01.nl")));
  EXPECT_EQ(p.kind, PromptKind::kTicIc);
  EXPECT_EQ(p.text,
            read_text(source_path("tests/fixtures/prompts/tic_ic_barman.txt")));
}

TEST(BuildPrompt, G3CardinalityImaginary) {
  const PromptSpec p = build_prompt(PromptKind::kG3Cardinality,
                                    imaginary_pack(), imaginary_text());
  EXPECT_EQ(p.text, read_text(source_path(
                        "tests/fixtures/prompts/g3_cardinality_imaginary.txt")));
}

TEST(BuildPrompt, G3ObjectsImaginary) {
  const PromptSpec p = build_prompt(PromptKind::kG3Objects, imaginary_pack(),
                                    imaginary_text());
  EXPECT_EQ(p.text, read_text(source_path(
                        "tests/fixtures/prompts/g3_objects_imaginary.txt")));
}

TEST(BuildPrompt, G3RulesImaginary) {
  Extraction upstream;
  upstream.named_objects = parse_named_objects(
      *embedded_file("prompts/imaginary/objects_answer.txt"));
  const PromptSpec p = build_prompt(PromptKind::kG3Rules, imaginary_pack(),
                                    imaginary_text(), &upstream);
  EXPECT_EQ(p.text, read_text(source_path(
                        "tests/fixtures/prompts/g3_rules_imaginary.txt")));
}

TEST(BuildPrompt, G1Imaginary) {
  const PromptSpec p =
      build_prompt(PromptKind::kG1, imaginary_pack(), imaginary_text());
  EXPECT_EQ(p.text,
            read_text(source_path("tests/fixtures/prompts/g1_imaginary.txt")));
}

TEST(BuildPrompt, TaskTextIsEmbedded) {
  const std::string text = "There are 2 shots and one purple dispenser.";
  for (PromptKind k : {PromptKind::kTicIc, PromptKind::kG3Cardinality,
                       PromptKind::kG3Objects, PromptKind::kG1}) {
    SCOPED_TRACE(std::string(to_string(k)));
    const PromptSpec p = build_prompt(k, load_builtin_pack("barman"), text);
    EXPECT_NE(p.text.find(text), std::string::npos);
  }
}

TEST(BuildPrompt, Errors) {
  EXPECT_THROW(build_prompt(PromptKind::kTicIc, imaginary_pack(), "x"),
               MissingExample);
  EXPECT_THROW(
      build_prompt(PromptKind::kG3Rules, load_builtin_pack("barman"), "x"),
      MissingUpstream);
  const Extraction empty;
  EXPECT_THROW(build_prompt(PromptKind::kG3Rules, load_builtin_pack("barman"),
                            "x", &empty),
               MissingUpstream);
}

TEST(Strategy, Parse) {
  EXPECT_EQ(parse_strategy("ic"), Strategy::kIc);
  EXPECT_EQ(parse_strategy("tic_g3"), Strategy::kG3);
  EXPECT_EQ(parse_strategy("g1"), Strategy::kG1);
  EXPECT_THROW(parse_strategy("g2"), ConfigError);
  EXPECT_EQ(parse_provider_mode("replay"), ProviderMode::kReplay);
  EXPECT_THROW(parse_provider_mode("rewind"), ConfigError);
}

TEST(ParseCardinalities, BarmanResponse) {
  const auto m = parse_cardinalities(
      read_text(source_path("tests/fixtures/responses/barman_cardinality.txt")));
  EXPECT_EQ(m, (std::map<std::string, std::int64_t>{{"dispenser", 3},
                                                    {"hand", 2},
                                                    {"ingredient", 3},
                                                    {"level", 3},
                                                    {"shaker", 1},
                                                    {"shot", 5}}));
}

TEST(ParseCardinalities, EmptyFencedAndQuoted) {
  EXPECT_TRUE(parse_cardinalities("{}").empty());
  const auto m =
      parse_cardinalities("Sure:\n```python\n{'shot': 4, \"hand\": 2}\n```\n");
  EXPECT_EQ(m.at("shot"), 4);
  EXPECT_EQ(m.at("hand"), 2);
  EXPECT_THROW(parse_cardinalities("no map here"), UnparseableMap);
  EXPECT_THROW(parse_cardinalities("{shot: four}"), UnparseableMap);
}

TEST(ParseNamedObjects, BarmanResponse) {
  const auto m = parse_named_objects(
      read_text(source_path("tests/fixtures/responses/barman_objects.txt")));
  EXPECT_TRUE(m.at("shaker").empty());
  EXPECT_EQ(m.at("shot"),
            (std::vector<std::string>{"shot1", "shot2", "shot3", "shot4"}));
  EXPECT_EQ(m.at("hand"), (std::vector<std::string>{"left", "right"}));
  EXPECT_EQ(m.at("cocktail").size(), 4u);
  EXPECT_EQ(m.at("ingredient").size(), 3u);
}

TEST(ParseNamedObjects, NormalizesIds) {
  const auto m = parse_named_objects("{tile: ['Tile-0-1', \"Tile 0 2\"]}");
  EXPECT_EQ(m.at("tile"), (std::vector<std::string>{"tile_0_1", "tile_0_2"}));
  EXPECT_THROW(parse_named_objects("{tile: tile1}"), UnparseableMap);
}

TEST(NormalizeId, Idempotent) {
  for (const char* s : {"Tile-0-1", "left hand", "shot1", "A-B C"}) {
    const std::string once = normalize_id(s);
    EXPECT_EQ(normalize_id(once), once);
  }
  EXPECT_EQ(normalize_id("Left Hand"), "left_hand");
}

TEST(ExtractIr, BarmanP01) {
  const std::string text =
      read_text(source_path("tests/fixtures/barman/p01_ir.lp"));
  const Program direct = parse_program(text);
  const Program p = extract_ir(text);
  EXPECT_EQ(p, direct);
  std::size_t goals = 0;
  for (const Rule& r : p.rules) {
    if (r.is_fact() && r.head.predicate == "goal") ++goals;
  }
  EXPECT_EQ(goals, 4u);
}

TEST(ExtractIr, StripsProseAndFences) {
  const std::string text =
      read_text(source_path("tests/fixtures/barman/p01_ir.lp"));
  const Program direct = parse_program(text);
  EXPECT_EQ(extract_ir("Here is the translation:\n" + text), direct);
  EXPECT_EQ(extract_ir("```prolog\n" + text + "```\nLet me know!"), direct);
  EXPECT_THROW(extract_ir(""), SyntaxError);
  EXPECT_THROW(extract_ir("   \n"), SyntaxError);
}

TEST(Cassette, KeyDependsOnNormalizedPrompt) {
  const std::string k = cassette_key(PromptKind::kG1, "gpt-4", "a  b\n c ");
  EXPECT_EQ(k, cassette_key(PromptKind::kG1, "gpt-4", "a b c"));
  EXPECT_NE(k, cassette_key(PromptKind::kG1, "gpt-3.5", "a b c"));
  EXPECT_NE(k, cassette_key(PromptKind::kTicIc, "gpt-4", "a b c"));
  EXPECT_NE(k, cassette_key(PromptKind::kG1, "gpt-4", "a b d"));
  EXPECT_EQ(normalize_prompt("  x \t\n y "), "x y");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cassette, RecordThenReplay) {
  testing::TempDir dir;
  auto store = std::make_shared<CassetteStore>(dir.path());
  int calls = 0;
  auto inner = std::make_unique<FunctionProvider>(
      "stub-model", [&](const PromptSpec& p) {
        ++calls;
        return "answer to " + std::to_string(p.text.size());
      });
  RecordingProvider recorder(std::move(inner), store);
  const PromptSpec prompt{PromptKind::kG1, "translate this please"};
  const std::string recorded = recorder.complete(prompt);
  EXPECT_EQ(calls, 1);

  ReplayProvider replay(store, "stub-model");
  EXPECT_EQ(replay.complete(prompt), recorded);
  // Whitespace differences map to the same cassette.
  EXPECT_EQ(replay.complete({PromptKind::kG1, "translate  this\nplease "}),
            recorded);
  EXPECT_EQ(calls, 1);

  const auto entry =
      store->load(cassette_key(PromptKind::kG1, "stub-model", prompt.text));
  ASSERT_TRUE(entry.has_value());
  EXPECT_EQ(entry->model, "stub-model");
  EXPECT_EQ(entry->response_text, recorded);
  EXPECT_EQ(entry->prompt_sha256, sha256_hex(normalize_prompt(prompt.text)));
}

TEST(Cassette, ReplayMiss) {
  testing::TempDir dir;
  ReplayProvider replay(std::make_shared<CassetteStore>(dir.path()), "gpt-4");
  EXPECT_THROW(replay.complete({PromptKind::kG1, "nothing recorded"}),
               CassetteMiss);
  ReplayProvider other_model(shipped_cassettes(), "gpt-5");
  const DomainPack pack = dataset_pack("barman");
  const std::string text =
      read_text(source_path("data/dataset/barman/tasks/p01.nl"));
  EXPECT_THROW(other_model.complete(build_prompt(PromptKind::kTicIc, pack, text)),
               CassetteMiss);
}

TEST(Cassette, ReplayNeverTouchesTheNetwork) {
  const std::uint64_t before = HttpProvider::request_count();
  ReplayProvider replay(shipped_cassettes(), "gpt-4");
  const DomainPack pack = dataset_pack("barman");
  const std::string text =
      read_text(source_path("data/dataset/barman/tasks/p01.nl"));
  for (Strategy s : {Strategy::kIc, Strategy::kG3, Strategy::kG1}) {
    EXPECT_NO_THROW(run_translation(s, replay, pack, text));
  }
  EXPECT_EQ(HttpProvider::request_count(), before);
}

TEST(Cassette, LiveProviderNeedsKey) {
  ProviderProfile profile;
  profile.endpoint = "http://127.0.0.1:9/v1/chat/completions";
  profile.auth_env = "TIC_TEST_SURELY_UNSET_KEY";
  HttpProvider http(profile);
  EXPECT_THROW(http.complete({PromptKind::kG1, "x"}), ConfigError);
}

TEST(RunTranslation, IcReplayMatchesGoldenIr) {
  ReplayProvider replay(shipped_cassettes(), "gpt-4");
  const DomainPack pack = dataset_pack("barman");
  const Extraction e = run_translation(
      Strategy::kIc, replay, pack,
      read_text(source_path("tests/fixtures/barman/p01.nl")));
  EXPECT_EQ(e.ir,
            parse_program(read_text(source_path("tests/fixtures/barman/p01_ir.lp"))));
}

TEST(RunTranslation, G3AndIcCompileToTheSameTask) {
  ReplayProvider replay(shipped_cassettes(), "gpt-4");
  const DomainPack pack = dataset_pack("barman");
  const std::string text =
      read_text(source_path("data/dataset/barman/tasks/p01.nl"));
  const Extraction g3 = run_translation(Strategy::kG3, replay, pack, text);
  EXPECT_EQ(g3.cardinalities.at("shot"), 5);
  EXPECT_EQ(g3.named_objects.at("hand"),
            (std::vector<std::string>{"left", "right"}));
  const Extraction ic = run_translation(Strategy::kIc, replay, pack, text);
  auto compile = [&](const Program& ir) {
    MaterializeOptions opts;
    opts.naming = pack.naming;
    return compile_task(materialize(ir, pack.rules(), opts), *pack.domain,
                        "p01", pack.compile_options());
  };
  EXPECT_EQ(serialize_task(compile(g3.ir)), serialize_task(compile(ic.ir)));
}

TEST(RunTranslation, StageLabels) {
  const DomainPack pack = load_builtin_pack("barman");
  FunctionProvider fails_on_objects("stub", [](const PromptSpec& p) {
    if (p.kind == PromptKind::kG3Objects) throw ProviderError(500, "boom");
    return std::string("{shot: 1}");
  });
  try {
    run_translation(Strategy::kG3, fails_on_objects, pack, "text");
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "g3_objects");
    EXPECT_EQ(e.cause_kind(), "ProviderError");
  }

  FunctionProvider garbage("stub", [](const PromptSpec&) {
    return std::string("I cannot help with that");
  });
  try {
    run_translation(Strategy::kIc, garbage, pack, "text");
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "ic");
    EXPECT_EQ(e.cause_kind(), "SyntaxError");
  }
}

}  // namespace
}  // namespace tic
