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


// tic-cassettes: writes replay cassettes without calling a model.
//
//   seed-dataset ROOT --dir DIR     one TIC-IC cassette per task whose
//                                   response is tasks/pNN.golden.lp
//   put --pack P --task T.nl --kind K --response R --dir DIR
//                                   a single cassette for prompt kind K

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tic/errors.hpp"
#include "tic/pipeline.hpp"
#include "tic/translate.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw tic::MissingFile(p.string() + " not found");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

tic::PromptKind parse_kind(const std::string& s) {
  for (tic::PromptKind k :
       {tic::PromptKind::kTicIc, tic::PromptKind::kG3Cardinality,
        tic::PromptKind::kG3Objects, tic::PromptKind::kG3Rules,
        tic::PromptKind::kG1}) {
    if (tic::to_string(k) == s) return k;
  }
  throw tic::ConfigError("unknown prompt kind " + s);
}

// Records `response` for the prompt the pipeline would send.
void record(const std::shared_ptr<tic::CassetteStore>& store,
            const std::string& model, const tic::PromptSpec& prompt,
            const std::string& response) {
  tic::RecordingProvider rec(
      std::make_unique<tic::FunctionProvider>(
          model, [&](const tic::PromptSpec&) { return response; }),
      store);
  rec.complete(prompt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write replay cassettes from known responses"};
  app.require_subcommand(1);
  std::string dir, model = "gpt-4";
  app.add_option("--model", model, "model name baked into the cassette key");

  auto* seed = app.add_subcommand("seed-dataset", "TIC-IC cassettes from golden IRs");
  std::string root;
  bool clean = false;
  seed->add_option("root", root)->required()->check(CLI::ExistingDirectory);
  seed->add_option("--dir", dir)->required();
  seed->add_flag("--clean", clean, "remove existing cassettes first");

  auto* put = app.add_subcommand("put", "One cassette for one prompt");
  std::string pack_name, task, kind, response, upstream;
  put->add_option("--pack", pack_name)->required();
  put->add_option("--task", task)->required()->check(CLI::ExistingFile);
  put->add_option("--kind", kind)->required();
  put->add_option("--response", response)->required()->check(CLI::ExistingFile);
  put->add_option("--upstream-objects", upstream,
                  "named-objects answer feeding a rules prompt")
      ->check(CLI::ExistingFile);
  put->add_option("--dir", dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto store = std::make_shared<tic::CassetteStore>(dir);
    if (*seed) {
      if (clean && fs::is_directory(dir)) {
        for (const auto& e : fs::directory_iterator(dir)) {
          if (e.path().extension() == ".json") fs::remove(e.path());
        }
      }
      std::size_t n = 0;
      for (const tic::DatasetDomain& d : tic::scan_dataset(root, true)) {
        const tic::DomainPack pack = tic::load_dataset_pack(d);
        for (const tic::DatasetTask& t : d.tasks) {
          const tic::PromptSpec prompt = tic::build_prompt(
              tic::PromptKind::kTicIc, pack, slurp(t.description));
          record(store, model, prompt, slurp(*t.golden_ir));
          ++n;
        }
      }
      std::cout << "wrote " << n << " cassettes to " << dir << "\n";
      return 0;
    }
    const tic::DomainPack pack = tic::resolve_pack(pack_name);
    tic::Extraction up;
    if (!upstream.empty()) up.named_objects = tic::parse_named_objects(slurp(upstream));
    const tic::PromptSpec prompt =
        tic::build_prompt(parse_kind(kind), pack, slurp(task), &up);
    record(store, model, prompt, slurp(response));
    std::cout << tic::cassette_key(prompt.kind, model, prompt.text) << "\n";
    return 0;
  } catch (const tic::Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 1;
  }
}
