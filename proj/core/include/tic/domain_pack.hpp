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

// Per-domain knowledge bundles: inference rules, prompt metadata, the
// in-context example and naming conventions.

#ifndef TIC_DOMAIN_PACK_HPP_
#define TIC_DOMAIN_PACK_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tic/inference.hpp"
#include "tic/ir.hpp"
#include "tic/ir_parser.hpp"
#include "tic/pddl.hpp"

namespace tic {

struct ObjectTypeInfo {
  std::string type;
  std::string description;
};

struct PredicateInfo {
  std::string predicate;
  std::size_t arity = 0;
  std::vector<std::string> argument_types;
  std::string description;
};

// Name and arity of a predicate that may appear outside the metadata.
struct PredicateKey {
  std::string predicate;
  std::size_t arity = 0;

  friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
};

class DomainPack {
 public:
  std::string name;

  // Hand-written rules from rules.lp.
  Program manual_rules;
  // Type rules regenerated from domain.pddl.
  std::vector<Rule> derived_rules;

  std::vector<ObjectTypeInfo> object_types;
  std::vector<PredicateInfo> predicates;
  // Bare helper predicates used by rules (first_level/1, adjacent/2, ...).
  std::set<PredicateKey> auxiliary_predicates;
  // Wrapped predicates the compiler interprets itself (min_cost_metric/1).
  std::set<PredicateKey> directives;
  NamingTemplates naming;
  std::set<std::string> hyphenate_types;

  std::optional<std::string> example_text;
  // Verbatim example.lp, as embedded in prompts.
  std::optional<std::string> example_ir_text;
  std::optional<std::string> golden_pddl;
  std::optional<std::string> domain_text;
  std::optional<DomainModel> domain;

  // manual_rules followed by derived_rules.
  Program rules() const;
  Program example_ir() const;
  CompileOptions compile_options() const;

  const PredicateInfo* find_predicate(std::string_view name) const;
};

// Reads rules.lp and meta.json (required) plus example.nl, example.lp,
// golden.pddl and domain.pddl when present. Throws MissingFile, PackError.
DomainPack load_pack(const std::filesystem::path& directory);

// One of the packs compiled into the library, by domain name.
DomainPack load_builtin_pack(std::string_view name);
std::vector<std::string> builtin_pack_names();

// A builtin name or a directory path.
DomainPack resolve_pack(std::string_view name_or_path);

// For each typed argument position of each predicate, the init and goal
// rules `object(X, t) :- init(p(_, X, _)).`. Positions typed `object`
// (which includes untyped ones) and (either ...) types yield nothing.
std::vector<Rule> derive_type_rules(const DomainModel& domain);

}  // namespace tic

#endif  // TIC_DOMAIN_PACK_HPP_
