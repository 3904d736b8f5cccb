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

// Bottom-up evaluation of IR programs under stratified negation, with the
// generative builtins and the cardinality/map expansion steps.

#ifndef TIC_INFERENCE_HPP_
#define TIC_INFERENCE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tic/ir.hpp"

namespace tic {

// Per-type id templates; "{type}" and "{i}" are substituted.
class NamingTemplates {
 public:
  NamingTemplates() = default;
  explicit NamingTemplates(std::map<std::string, std::string> by_type)
      : by_type_(std::move(by_type)) {}

  std::string format(std::string_view type, std::int64_t index) const;
  const std::map<std::string, std::string>& templates() const {
    return by_type_;
  }

 private:
  std::map<std::string, std::string> by_type_;
};

// Dependency key of an atom: "p/n", refined for init/goal by the wrapped
// functor ("init/1:clear/1"); "init/1:*" when the functor is unknown.
std::string predicate_key(const Atom& atom);

struct Strata {
  // Non-fact rules grouped by stratum, lowest first.
  std::vector<std::vector<Rule>> groups;
  // Every head and body key -> its stratum.
  std::map<std::string, std::size_t> stratum_of;

  std::size_t size() const { return groups.size(); }
};

// Throws Unstratifiable when a negative edge lies on a dependency cycle.
Strata stratify(const Program& rules);

struct CardinalitySpec {
  std::string type_name;
  std::int64_t required_count = 0;

  friend auto operator<=>(const CardinalitySpec&,
                          const CardinalitySpec&) = default;
};

struct MapSpec {
  std::string state;  // "init" or "goal"
  std::string left_type;
  std::string relation;
  std::string right_type;

  std::string to_string() const;
  friend auto operator<=>(const MapSpec&, const MapSpec&) = default;
};

// Adds the missing object(id, T) facts, tagged generated, using the
// smallest unused indices. Throws CardinalityViolation when more objects
// are named than required.
FactBase expand_cardinalities(const FactBase& facts,
                              const std::vector<CardinalitySpec>& specs,
                              const NamingTemplates& naming = {});

// Index-aligned bijection over the naturally sorted objects of both types;
// the consumed map atom is removed. Throws MapArityMismatch.
FactBase expand_maps(const FactBase& facts, const std::vector<MapSpec>& specs);

struct BuiltinCall {
  std::string name;
  std::vector<Term> args;
};

struct BuiltinResult {
  // Ids (make_id, gen_objects) or atom-shaped compounds (make_seq,
  // make_fact).
  std::vector<Term> terms;
  // make_map defers to map expansion; `state` is left empty.
  std::optional<MapSpec> map_request;
};

// Throws BuiltinArity, NonGroundBuiltin, BuiltinError.
BuiltinResult eval_builtin(const BuiltinCall& call, const FactBase& context,
                           const NamingTemplates& naming = {});

struct MaterializeOptions {
  NamingTemplates naming;
  // Upper bound on expand-and-resaturate rounds.
  std::size_t max_rounds = 1000;
};

// Least model of the IR facts plus all rules of both programs, with
// cardinality and map expansion interleaved until nothing changes.
FactBase materialize(const Program& ir, const Program& pack_rules,
                     const MaterializeOptions& options = {});

using Binding = std::map<std::string, Term>;

// All ground substitutions for the variables of `pattern`, sorted.
std::vector<Binding> query(const FactBase& facts, const Atom& pattern);

}  // namespace tic

#endif  // TIC_INFERENCE_HPP_
