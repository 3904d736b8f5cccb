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

#ifndef TIC_IR_PARSER_HPP_
#define TIC_IR_PARSER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "tic/ir.hpp"

namespace tic {

class DomainPack;

// Parses `.lp` source. Grammar, informally:
//
//   clause  := ['default'] atom [':-' element {',' element}] '.'
//   element := ['not'] atom | term cmp term
//   term    := sum ; sum := product {('+'|'-') product}
//   product := primary {('*'|'/') primary}
//   primary := INT | '-' INT | VAR | '_' | ident ['(' terms ')']
//            | '@' ident '(' terms ')' | STRING | '(' sum ')'
//
// `%` starts a line comment. Throws SyntaxError or UnsafeRule.
Program parse_program(std::string_view text, std::string source_name = {});

// One rule per line in program order, each line terminated by '\n'.
std::string serialize_program(const Program& program);

struct Diagnostic {
  enum class Kind {
    kUnknownPredicate,
    kArityMismatch,
    kUnsafeRule,
    kUnknownBuiltin,
    kMalformedWrapper,
  };

  Kind kind;
  std::string predicate;
  std::size_t expected_arity = 0;
  std::size_t actual_arity = 0;
  SourceLocation location;
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.kind == b.kind && a.predicate == b.predicate &&
           a.expected_arity == b.expected_arity &&
           a.actual_arity == b.actual_arity;
  }
};

std::string_view to_string(Diagnostic::Kind kind);

// Checks every atom against the schema predicates (object/2,
// cardinality/2, init/1, goal/1, map/3, *_grid/3), the pack's predicate
// metadata and its auxiliary predicates. An empty result means clean.
std::vector<Diagnostic> validate_program(const Program& program,
                                         const DomainPack& pack);

}  // namespace tic

#endif  // TIC_IR_PARSER_HPP_
