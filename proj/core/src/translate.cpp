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


#include "tic/translate.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tic/errors.hpp"
#include "tic/ir_parser.hpp"
#include "tic/resources.hpp"

namespace tic {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kIc:
      return "ic";
    case Strategy::kG3:
      return "g3";
    case Strategy::kG1:
      return "g1";
  }
  return "?";
}

std::string_view to_string(PromptKind k) {
  switch (k) {
    case PromptKind::kTicIc:
      return "tic_ic";
    case PromptKind::kG3Cardinality:
      return "tic_g3_cardinality";
    case PromptKind::kG3Objects:
      return "tic_g3_objects";
    case PromptKind::kG3Rules:
      return "tic_g3_rules";
    case PromptKind::kG1:
      return "tic_g1";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text.starts_with("tic_")) text.remove_prefix(4);
  if (text == "ic") return Strategy::kIc;
  if (text == "g3") return Strategy::kG3;
  if (text == "g1") return Strategy::kG1;
  throw ConfigError("unknown strategy '" + std::string(text) +
                    "' (expected ic, g3 or g1)");
}

std::string_view to_string(ProviderMode m) {
  switch (m) {
    case ProviderMode::kLive:
      return "live";
    case ProviderMode::kReplay:
      return "replay";
    case ProviderMode::kRecord:
      return "record";
  }
  return "?";
}

ProviderMode parse_provider_mode(std::string_view text) {
  if (text == "live") return ProviderMode::kLive;
  if (text == "replay") return ProviderMode::kReplay;
  if (text == "record") return ProviderMode::kRecord;
  throw ConfigError("unknown provider mode '" + std::string(text) +
                    "' (expected live, replay or record)");
}

namespace {

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string_view trim(std::string_view s) {
  s = rtrim(s);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  return s;
}

// Verbatim listings are reproduced without trailing blanks on any line.
std::string rtrim_lines(std::string_view s) {
  std::string out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t nl = s.find('\n', start);
    if (nl == std::string_view::npos) nl = s.size();
    out.append(rtrim(s.substr(start, nl - start)));
    if (nl < s.size()) out.push_back('\n');
    start = nl + 1;
  }
  return std::string(rtrim(out));
}

// Python repr of a str, which is how the prompts print metadata.
std::string py_quote(std::string_view s) {
  const bool single = s.find('\'') != std::string_view::npos;
  const bool dbl = s.find('"') != std::string_view::npos;
  if (single && !dbl) return "\"" + std::string(s) + "\"";
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string asset(std::string_view path) {
  const std::string full = "prompts/" + std::string(path);
  auto text = embedded_file(full);
  if (!text) throw MissingFile("embedded prompt asset " + full);
  return std::string(rtrim(*text));
}

// Expands {{name}} from `vars` and {{@path}} from the prompt assets.
std::string render(std::string_view tmpl,
                   const std::map<std::string, std::string>& vars) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find("}}", open);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(pos, open - pos));
    const std::string name(tmpl.substr(open + 2, close - open - 2));
    if (name.starts_with("@")) {
      out += asset(name.substr(1));
    } else {
      auto it = vars.find(name);
      if (it == vars.end()) throw MissingFile("prompt variable " + name);
      out += it->second;
    }
    pos = close + 2;
  }
  out.append(tmpl.substr(pos));
  return out;
}

}  // namespace

std::string render_object_types(const DomainPack& pack) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < pack.object_types.size(); ++i) {
    const auto& t = pack.object_types[i];
    out += " {'type': " + py_quote(t.type) +
           ", 'description': " + py_quote(t.description) + "}";
    out += i + 1 < pack.object_types.size() ? ",\n" : "\n";
  }
  return out + "]";
}

std::string render_predicates(const DomainPack& pack) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < pack.predicates.size(); ++i) {
    const auto& p = pack.predicates[i];
    out += "{'predicate': " + py_quote(p.predicate) +
           ", 'arity': " + std::to_string(p.arity) + ", 'argument types': [";
    for (std::size_t k = 0; k < p.argument_types.size(); ++k) {
      if (k) out += ", ";
      out += py_quote(p.argument_types[k]);
    }
    out += "], 'description': " + py_quote(p.description) + "}";
    out += i + 1 < pack.predicates.size() ? ",\n\n" : "\n";
  }
  return out + "]";
}

std::string render_objects(
    const DomainPack& pack,
    const std::map<std::string, std::vector<std::string>>& objects) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& t : pack.object_types) {
    if (objects.count(t.type) && seen.insert(t.type).second) {
      order.push_back(t.type);
    }
  }
  for (const auto& [type, ids] : objects) {
    if (seen.insert(type).second) order.push_back(type);
  }
  std::string out = "{";
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += ", ";
    out += py_quote(order[i]) + ": [";
    const auto& ids = objects.at(order[i]);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (k) out += ", ";
      out += py_quote(ids[k]);
    }
    out += "]";
  }
  return out + "}";
}

PromptSpec build_prompt(PromptKind kind, const DomainPack& pack,
                        std::string_view task_description,
                        const Extraction* upstream) {
  std::map<std::string, std::string> vars;
  vars["text"] = std::string(rtrim(task_description));
  std::string file;
  switch (kind) {
    case PromptKind::kTicIc:
      if (!pack.example_text || !pack.example_ir_text) {
        throw MissingExample("pack '" + pack.name +
                             "' has no in-context example");
      }
      vars["example_text"] = std::string(rtrim(*pack.example_text));
      vars["example_ir"] = rtrim_lines(*pack.example_ir_text);
      file = "tic_ic.txt";
      break;
    case PromptKind::kG3Cardinality:
      vars["object_types"] = render_object_types(pack);
      file = "g3_cardinality.txt";
      break;
    case PromptKind::kG3Objects:
      vars["object_types"] = render_object_types(pack);
      file = "g3_objects.txt";
      break;
    case PromptKind::kG3Rules:
      if (upstream == nullptr || upstream->named_objects.empty()) {
        throw MissingUpstream(
            "the rules prompt needs the objects extracted in the previous "
            "step");
      }
      vars["objects"] = render_objects(pack, upstream->named_objects);
      vars["predicates"] = render_predicates(pack);
      file = "g3_rules.txt";
      break;
    case PromptKind::kG1:
      vars["object_types"] = render_object_types(pack);
      vars["predicates"] = render_predicates(pack);
      file = "g1.txt";
      break;
  }
  return PromptSpec{kind, render(asset(file), vars)};
}

// ---------------------------------------------------------------------------
// Cassettes

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("CryptoError", "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string normalize_prompt(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : trim(text)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::string cassette_key(PromptKind kind, std::string_view model,
                         std::string_view prompt_text) {
  std::string material(to_string(kind));
  material += '\n';
  material += model;
  material += '\n';
  material += normalize_prompt(prompt_text);
  return sha256_hex(material);
}

CassetteStore::CassetteStore(std::filesystem::path directory)
    : dir_(std::move(directory)) {}

std::optional<CassetteEntry> CassetteStore::load(const std::string& key) const {
  const auto path = dir_ / (key + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    CassetteEntry e;
    e.key = j.at("key").get<std::string>();
    e.strategy = j.value("strategy", "");
    e.model = j.value("model", "");
    e.prompt_sha256 = j.value("prompt_sha256", "");
    e.response_text = j.at("response_text").get<std::string>();
    e.timestamp = j.value("timestamp", "");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw CassetteMiss("cassette " + path.string() + " is malformed: " +
                       ex.what());
  }
}

void CassetteStore::save(const CassetteEntry& entry) {
  nlohmann::ordered_json j;
  j["key"] = entry.key;
  j["strategy"] = entry.strategy;
  j["model"] = entry.model;
  j["prompt_sha256"] = entry.prompt_sha256;
  j["response_text"] = entry.response_text;
  j["timestamp"] = entry.timestamp;
  const std::string body = j.dump(2) + "\n";

  std::lock_guard lock(mu_);
  std::filesystem::create_directories(dir_);
  const auto final_path = dir_ / (entry.key + ".json");
  const auto tmp_path = dir_ / (entry.key + ".json.tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw Error("IoError", "cannot write " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path);
}

ReplayProvider::ReplayProvider(std::shared_ptr<CassetteStore> store,
                               std::string model)
    : store_(std::move(store)), model_(std::move(model)) {}

std::string ReplayProvider::complete(const PromptSpec& prompt) {
  const std::string key = cassette_key(prompt.kind, model_, prompt.text);
  auto entry = store_->load(key);
  if (!entry) {
    throw CassetteMiss("no recorded " + std::string(to_string(prompt.kind)) +
                       " response for model '" + model_ + "' (key " + key +
                       ") in " + store_->directory().string());
  }
  return entry->response_text;
}

RecordingProvider::RecordingProvider(std::unique_ptr<CompletionProvider> inner,
                                     std::shared_ptr<CassetteStore> store)
    : inner_(std::move(inner)), store_(std::move(store)) {}

std::string RecordingProvider::complete(const PromptSpec& prompt) {
  std::string response = inner_->complete(prompt);
  CassetteEntry e;
  e.model = inner_->model();
  e.key = cassette_key(prompt.kind, e.model, prompt.text);
  e.strategy = std::string(to_string(prompt.kind));
  e.prompt_sha256 = sha256_hex(prompt.text);
  e.response_text = response;
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  e.timestamp = buf;
  store_->save(e);
  return response;
}

std::unique_ptr<CompletionProvider> make_provider(
    const ProviderProfile& profile, ProviderMode mode,
    const std::filesystem::path& cassette_dir) {
  switch (mode) {
    case ProviderMode::kReplay:
      return std::make_unique<ReplayProvider>(
          std::make_shared<CassetteStore>(cassette_dir), profile.model);
    case ProviderMode::kRecord:
      return std::make_unique<RecordingProvider>(
          std::make_unique<HttpProvider>(profile),
          std::make_shared<CassetteStore>(cassette_dir));
    case ProviderMode::kLive:
      break;
  }
  return std::make_unique<HttpProvider>(profile);
}

// ---------------------------------------------------------------------------
// Response parsing

std::string normalize_id(std::string_view id) {
  std::string out;
  for (char c : trim(id)) {
    if (c == ' ' || c == '-') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

namespace {

// The outermost {...} of the response, fences and prose dropped.
std::string_view brace_body(std::string_view text) {
  const std::size_t open = text.find('{');
  const std::size_t close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open) {
    throw UnparseableMap("no {...} map in response: " +
                         std::string(text.substr(0, 80)));
  }
  return text.substr(open + 1, close - open - 1);
}

class MapScanner {
 public:
  explicit MapScanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }
  // Quoted or bare word; bare words stop at , : ] } and newlines.
  std::string word() {
    skip_ws();
    if (pos_ >= s_.size()) fail("a name");
    const char q = s_[pos_];
    if (q == '\'' || q == '"') {
      ++pos_;
      std::string out;
      while (pos_ < s_.size() && s_[pos_] != q) {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        out.push_back(s_[pos_++]);
      }
      if (pos_ >= s_.size()) fail("closing quote");
      ++pos_;
      return out;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::string_view(",:]}[{\n").find(s_[pos_]) ==
                                   std::string_view::npos) {
      ++pos_;
    }
    std::string out(trim(s_.substr(start, pos_ - start)));
    if (out.empty()) fail("a name");
    return out;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw UnparseableMap("expected " + what + " at offset " +
                         std::to_string(pos_) + " of map body");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::int64_t to_int(const std::string& w, MapScanner& sc) {
  std::int64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoll(w, &used);
  } catch (const std::exception&) {
    sc.fail("an integer count");
  }
  if (used != w.size()) sc.fail("an integer count");
  return v;
}

}  // namespace

std::map<std::string, std::int64_t> parse_cardinalities(std::string_view text) {
  MapScanner sc(brace_body(text));
  std::map<std::string, std::int64_t> out;
  while (!sc.at_end()) {
    std::string key = normalize_id(sc.word());
    sc.expect(':');
    std::string value = sc.word();
    out[key] = to_int(value, sc);
    if (!sc.accept(',')) break;
  }
  if (!sc.at_end()) sc.fail("',' or end of map");
  return out;
}

std::map<std::string, std::vector<std::string>> parse_named_objects(
    std::string_view text) {
  MapScanner sc(brace_body(text));
  std::map<std::string, std::vector<std::string>> out;
  while (!sc.at_end()) {
    std::string key = normalize_id(sc.word());
    sc.expect(':');
    sc.expect('[');
    auto& ids = out[key];
    if (!sc.accept(']')) {
      do {
        std::string id = normalize_id(sc.word());
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
          ids.push_back(std::move(id));
        }
      } while (sc.accept(','));
      sc.expect(']');
    }
    if (!sc.accept(',')) break;
  }
  if (!sc.at_end()) sc.fail("',' or end of map");
  return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool looks_like_clause_start(std::string_view line) {
  line = trim(line);
  if (line.starts_with("default ")) line = trim(line.substr(8));
  if (line.empty() || !std::islower(static_cast<unsigned char>(line[0]))) {
    return false;
  }
  std::size_t i = 0;
  while (i < line.size() &&
         (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
    ++i;
  }
  return i < line.size() && (line[i] == '(' || line[i] == '.' ||
                             line.substr(i).starts_with(" :-") ||
                             line.substr(i).starts_with(":-"));
}

}  // namespace

Program extract_ir(std::string_view text) {
  // Prefer the first fenced block when there is one.
  if (auto open = text.find("```"); open != std::string_view::npos) {
    auto body_start = text.find('\n', open);
    if (body_start != std::string_view::npos) {
      auto close = text.find("```", body_start);
      text = text.substr(body_start + 1, close == std::string_view::npos
                                             ? std::string_view::npos
                                             : close - body_start - 1);
    }
  }
  const auto lines = split_lines(text);
  std::size_t first = 0;
  while (first < lines.size() && !looks_like_clause_start(lines[first]) &&
         !trim(lines[first]).starts_with("%")) {
    ++first;
  }
  std::size_t last = lines.size();
  while (last > first) {
    auto l = trim(lines[last - 1]);
    if (l.empty() || l.ends_with(".") || l.starts_with("%")) break;
    --last;
  }
  std::string body;
  for (std::size_t i = first; i < last; ++i) {
    body.append(lines[i]);
    body.push_back('\n');
  }
  if (trim(body).empty()) {
    throw SyntaxError(1, 1, "an ASP program", "empty response");
  }
  try {
    return parse_program(body, "response");
  } catch (const SyntaxError& e) {
    const auto snippet_lines = split_lines(body);
    std::string snippet =
        e.line() >= 1 && e.line() <= snippet_lines.size()
            ? std::string(snippet_lines[e.line() - 1])
            : std::string();
    throw SyntaxError(e.line(), e.column(), e.expected(),
                      "in response line '" + snippet + "'");
  }
}

namespace {

template <typename F>
auto staged(std::string_view stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(std::string(stage), e.kind(), e.what());
  } catch (const std::exception& e) {
    throw StageError(std::string(stage), "Exception", e.what());
  }
}

bool has_cardinality(const Program& p) {
  return std::any_of(p.rules.begin(), p.rules.end(), [](const Rule& r) {
    return r.head.predicate == "cardinality" && r.head.args.size() == 2;
  });
}

}  // namespace

Extraction run_translation(Strategy strategy, CompletionProvider& provider,
                           const DomainPack& pack,
                           std::string_view task_description) {
  Extraction ex;
  auto ask = [&](PromptKind kind, const Extraction* upstream) {
    return provider.complete(
        build_prompt(kind, pack, task_description, upstream));
  };
  switch (strategy) {
    case Strategy::kIc:
      ex.ir = staged("ic", [&] {
        return extract_ir(ask(PromptKind::kTicIc, nullptr));
      });
      break;
    case Strategy::kG1:
      ex.ir = staged("g1", [&] {
        return extract_ir(ask(PromptKind::kG1, nullptr));
      });
      break;
    case Strategy::kG3: {
      ex.cardinalities = staged("g3_cardinality", [&] {
        return parse_cardinalities(ask(PromptKind::kG3Cardinality, nullptr));
      });
      ex.named_objects = staged("g3_objects", [&] {
        return parse_named_objects(ask(PromptKind::kG3Objects, nullptr));
      });
      ex.ir = staged("g3_rules", [&] {
        return extract_ir(ask(PromptKind::kG3Rules, &ex));
      });
      if (!has_cardinality(ex.ir)) {
        for (const auto& [type, n] : ex.cardinalities) {
          Rule r;
          r.kind = RuleKind::kFact;
          r.head.predicate = "cardinality";
          r.head.args = {Term::symbol(type), Term::integer(n)};
          ex.ir.add(std::move(r));
        }
      }
      break;
    }
  }
  ex.diagnostics = validate_program(ex.ir, pack);
  return ex;
}

}  // namespace tic
