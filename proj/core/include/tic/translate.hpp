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


// Prompt construction, completion providers with a cassette store for
// record/replay, and parsers for model responses.

#ifndef TIC_TRANSLATE_HPP_
#define TIC_TRANSLATE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tic/domain_pack.hpp"
#include "tic/ir.hpp"

namespace tic {

enum class Strategy { kIc, kG3, kG1 };

enum class PromptKind {
  kTicIc,
  kG3Cardinality,
  kG3Objects,
  kG3Rules,
  kG1,
};

std::string_view to_string(Strategy s);
std::string_view to_string(PromptKind k);
// Accepts ic|g3|g1 (and the tic_ prefixed forms). Throws ConfigError.
Strategy parse_strategy(std::string_view text);

struct Extraction {
  std::map<std::string, std::int64_t> cardinalities;
  std::map<std::string, std::vector<std::string>> named_objects;
  Program ir;
  std::vector<Diagnostic> diagnostics;
};

struct PromptSpec {
  PromptKind kind = PromptKind::kTicIc;
  std::string text;
};

// Loose, Python-literal style used inside the prompts.
std::string render_object_types(const DomainPack& pack);
std::string render_predicates(const DomainPack& pack);
std::string render_objects(const DomainPack& pack,
                           const std::map<std::string,
                                          std::vector<std::string>>& objects);

// Throws MissingExample (kTicIc without an in-context example) and
// MissingUpstream (kG3Rules without extracted objects).
PromptSpec build_prompt(PromptKind kind, const DomainPack& pack,
                        std::string_view task_description,
                        const Extraction* upstream = nullptr);

// ---------------------------------------------------------------------------
// Providers

enum class ProviderMode { kLive, kReplay, kRecord };

std::string_view to_string(ProviderMode m);
ProviderMode parse_provider_mode(std::string_view text);

struct ProviderProfile {
  std::string name = "default";
  // e.g. https://api.openai.com/v1/chat/completions
  std::string endpoint;
  std::string model = "gpt-4";
  double temperature = 0.0;
  // Name of the environment variable holding the API key.
  std::string auth_env = "TIC_API_KEY";
  // JSON pointer to the completion text in the response body.
  std::string response_path = "/choices/0/message/content";
  int timeout_seconds = 120;
};

class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual std::string complete(const PromptSpec& prompt) = 0;
  virtual std::string model() const = 0;
};

// Chat-completions style HTTP provider. Throws ConfigError when the key
// variable is unset, ProviderError on transport or HTTP failures.
class HttpProvider : public CompletionProvider {
 public:
  explicit HttpProvider(ProviderProfile profile);
  std::string complete(const PromptSpec& prompt) override;
  std::string model() const override { return profile_.model; }

  // Requests sent by all instances in this process.
  static std::uint64_t request_count();

 private:
  ProviderProfile profile_;
};

// Wraps a callable; used for stubs and tests.
class FunctionProvider : public CompletionProvider {
 public:
  using Fn = std::function<std::string(const PromptSpec&)>;
  FunctionProvider(std::string model, Fn fn)
      : model_(std::move(model)), fn_(std::move(fn)) {}
  std::string complete(const PromptSpec& prompt) override {
    return fn_(prompt);
  }
  std::string model() const override { return model_; }

 private:
  std::string model_;
  Fn fn_;
};

struct CassetteEntry {
  std::string key;
  std::string strategy;
  std::string model;
  std::string prompt_sha256;
  std::string response_text;
  std::string timestamp;
};

std::string sha256_hex(std::string_view data);
// Whitespace runs collapsed to one space, ends trimmed.
std::string normalize_prompt(std::string_view text);
std::string cassette_key(PromptKind kind, std::string_view model,
                         std::string_view prompt_text);

// Directory of <key>.json files. Writes are serialized and atomic.
class CassetteStore {
 public:
  explicit CassetteStore(std::filesystem::path directory);

  std::optional<CassetteEntry> load(const std::string& key) const;
  void save(const CassetteEntry& entry);
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
};

class ReplayProvider : public CompletionProvider {
 public:
  ReplayProvider(std::shared_ptr<CassetteStore> store, std::string model);
  std::string complete(const PromptSpec& prompt) override;
  std::string model() const override { return model_; }

 private:
  std::shared_ptr<CassetteStore> store_;
  std::string model_;
};

// Forwards to `inner` and stores every response.
class RecordingProvider : public CompletionProvider {
 public:
  RecordingProvider(std::unique_ptr<CompletionProvider> inner,
                    std::shared_ptr<CassetteStore> store);
  std::string complete(const PromptSpec& prompt) override;
  std::string model() const override { return inner_->model(); }

 private:
  std::unique_ptr<CompletionProvider> inner_;
  std::shared_ptr<CassetteStore> store_;
};

std::unique_ptr<CompletionProvider> make_provider(
    const ProviderProfile& profile, ProviderMode mode,
    const std::filesystem::path& cassette_dir);

// ---------------------------------------------------------------------------
// Response parsing

// Lower case; spaces and hyphens become underscores.
std::string normalize_id(std::string_view id);

// `{a: 2, 'b': 3}` with optional surrounding prose or code fences.
// Throws UnparseableMap.
std::map<std::string, std::int64_t> parse_cardinalities(std::string_view text);

// `{a: [x1, 'x2'], b: []}`; ids are normalized. Throws UnparseableMap.
std::map<std::string, std::vector<std::string>> parse_named_objects(
    std::string_view text);

// Strips code fences and leading or trailing prose, then parses. Throws
// SyntaxError (also for an empty response) or UnsafeRule.
Program extract_ir(std::string_view text);

// Runs the call sequence for `strategy`. Failures are rethrown as
// StageError labelled ic, g3_cardinality, g3_objects, g3_rules or g1.
Extraction run_translation(Strategy strategy, CompletionProvider& provider,
                           const DomainPack& pack,
                           std::string_view task_description);

}  // namespace tic

#endif  // TIC_TRANSLATE_HPP_
