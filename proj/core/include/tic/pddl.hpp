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

// PDDL domain and task models, their parsers and writer, and the
// compiler from a materialized fact base to a task.

#ifndef TIC_PDDL_HPP_
#define TIC_PDDL_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tic/ir.hpp"

namespace tic {

// ---------------------------------------------------------------------------
// S-expressions

struct SExpr {
  // A leaf is an atom token; otherwise a parenthesised list.
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  std::size_t line = 0;

  bool is_token(std::string_view t) const { return !is_list && token == t; }
  // "(head ...)" test on lists.
  bool starts_with(std::string_view head) const;
  std::string to_string() const;
};

// Parses every top-level expression. Tokens are lower-cased (PDDL is
// case-insensitive); ';' starts a comment. Throws SExprError.
std::vector<SExpr> parse_sexprs(std::string_view text);

// ---------------------------------------------------------------------------
// Domain model

struct TypedParameter {
  std::string variable;
  // More than one entry for `(either a b)`.
  std::vector<std::string> types;
};

struct PredicateSignature {
  std::string name;
  std::vector<TypedParameter> parameters;

  std::size_t arity() const { return parameters.size(); }
};

class DomainModel {
 public:
  std::string name;
  // Type -> parent type. Every type reaches "object".
  std::map<std::string, std::string> types;
  std::vector<PredicateSignature> predicates;
  // Constant -> type.
  std::map<std::string, std::string> constants;
  std::vector<std::string> functions;
  std::vector<std::string> requirements;
  std::vector<std::string> warnings;

  bool has_functions() const { return !functions.empty(); }
  // True when the domain declares types beyond the implicit "object".
  bool is_typed() const;

  // Exact match first, then the IR spelling with '_' read as '-'.
  std::optional<std::string> resolve_type(std::string_view ir_name) const;
  const PredicateSignature* resolve_predicate(std::string_view ir_name) const;

  // `ancestor` equals `type` or is reachable through parents.
  bool is_subtype(std::string_view type, std::string_view ancestor) const;
};

DomainModel parse_domain(std::string_view text);

// ---------------------------------------------------------------------------
// Task model

struct PddlAtom {
  std::string predicate;
  std::vector<std::string> args;

  std::string to_string() const;

  friend auto operator<=>(const PddlAtom&, const PddlAtom&) = default;
};

// `(= (f a b) 0)` initialisation of a numeric fluent.
struct NumericFact {
  std::string function;
  std::vector<std::string> args;
  std::string value;

  std::string to_string() const;

  friend auto operator<=>(const NumericFact&, const NumericFact&) = default;
};

struct PddlAtomLess {
  bool operator()(const PddlAtom& a, const PddlAtom& b) const;
};

class TaskPddl {
 public:
  std::string problem_name;
  std::string domain_name;
  // Type -> object ids, naturally sorted.
  std::map<std::string, std::vector<std::string>> objects;
  std::set<PddlAtom> init;
  std::set<NumericFact> numeric_init;
  std::set<PddlAtom> goal;
  // e.g. "minimize (total-cost)".
  std::optional<std::string> metric;

  std::size_t object_count() const;
  // Object -> declared type.
  std::map<std::string, std::string> object_types() const;
  bool operator==(const TaskPddl&) const = default;
};

// Throws SExprError on malformed input, UndeclaredObject when init or goal
// mention an object missing from :objects.
TaskPddl parse_task(std::string_view text);

// Canonical layout: two-space indent, LF endings, objects grouped by type,
// atoms in natural order, goal as (and ...).
std::string serialize_task(const TaskPddl& task);

// Checks that every referenced object is declared and every predicate and
// type exists in `domain`. Throws UndeclaredObject / CompileError.
void validate_task(const TaskPddl& task, const DomainModel& domain);

struct CompileOptions {
  // Objects of these (domain) types have '_' rewritten to '-'.
  std::set<std::string> hyphenate_types;
  // Also rewrite objects that appear as the position argument of a
  // *_grid fact.
  bool hyphenate_grid_objects = true;
};

// Objects from object(X, T) with T declared (most specific type wins),
// init/goal atoms whose predicate is declared, and the min_cost_metric
// directive. Throws EmptyGoal, TypeConflict, UndeclaredObject.
TaskPddl compile_task(const FactBase& facts, const DomainModel& domain,
                      std::string problem_name,
                      const CompileOptions& options = {});

}  // namespace tic

#endif  // TIC_PDDL_HPP_
