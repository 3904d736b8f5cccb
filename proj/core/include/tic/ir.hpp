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

// Abstract syntax of the logic-program intermediate representation (IR):
// terms, atoms, rules, programs and ground fact bases.

#ifndef TIC_IR_HPP_
#define TIC_IR_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tic {

class Term {
 public:
  enum class Kind : std::uint8_t {
    kSymbol,
    kInteger,
    kVariable,
    kAnonymous,
    kCompound,
    kExternal,
    kArith,
    kText,
  };

  Term() = default;

  static Term symbol(std::string name);
  static Term integer(std::int64_t value);
  static Term variable(std::string name);
  static Term anonymous();
  static Term compound(std::string functor, std::vector<Term> args);
  static Term external(std::string name, std::vector<Term> args);
  // `op` is one of "+", "-", "*", "/".
  static Term arith(std::string op, Term left, Term right);
  static Term text(std::string value);

  Kind kind() const { return kind_; }
  bool is_symbol() const { return kind_ == Kind::kSymbol; }
  bool is_integer() const { return kind_ == Kind::kInteger; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_anonymous() const { return kind_ == Kind::kAnonymous; }
  bool is_compound() const { return kind_ == Kind::kCompound; }
  bool is_external() const { return kind_ == Kind::kExternal; }
  bool is_arith() const { return kind_ == Kind::kArith; }
  bool is_text() const { return kind_ == Kind::kText; }

  // Symbol name, variable name, functor, external name, arithmetic
  // operator, or text value depending on kind.
  const std::string& name() const { return name_; }
  std::int64_t value() const { return value_; }
  const std::vector<Term>& args() const { return args_; }
  std::vector<Term>& mutable_args() { return args_; }

  // Symbols and compounds can stand for an atom; a symbol is a 0-ary atom.
  bool is_atom_shaped() const { return is_symbol() || is_compound(); }

  bool is_ground() const;
  void collect_variables(std::set<std::string>& out) const;

  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::kSymbol;
  std::string name_;
  std::int64_t value_ = 0;
  std::vector<Term> args_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  Atom() = default;
  Atom(std::string p, std::vector<Term> a)
      : predicate(std::move(p)), args(std::move(a)) {}

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;
  void collect_variables(std::set<std::string>& out) const;
  std::string to_string() const;

  // `init(p(a))` -> compound term p(a) viewed as an atom, and back.
  Term as_term() const;
  static std::optional<Atom> from_term(const Term& t);

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

struct Literal {
  Atom atom;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class CompareOp : std::uint8_t { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view to_string(CompareOp op);

struct Comparison {
  CompareOp op = CompareOp::kEq;
  Term left;
  Term right;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct BodyElement {
  enum class Kind : std::uint8_t { kLiteral, kComparison };

  Kind kind = Kind::kLiteral;
  Literal literal;
  Comparison comparison;

  static BodyElement of(Literal l);
  static BodyElement of(Comparison c);

  bool is_literal() const { return kind == Kind::kLiteral; }
  std::string to_string() const;

  friend bool operator==(const BodyElement&, const BodyElement&) = default;
};

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

enum class RuleKind : std::uint8_t { kFact, kRule, kDefault };

struct Rule {
  Atom head;
  std::vector<BodyElement> body;
  RuleKind kind = RuleKind::kRule;
  SourceLocation location;

  bool is_fact() const { return kind == RuleKind::kFact; }
  bool is_default() const { return kind == RuleKind::kDefault; }
  std::string to_string() const;

  // Structural equality; the source location is ignored.
  friend bool operator==(const Rule& a, const Rule& b) {
    return a.kind == b.kind && a.head == b.head && a.body == b.body;
  }
};

// Head variables not bound by a positive body literal or an `=`
// assignment, and negated-literal variables bound nowhere. Empty when safe.
std::vector<std::string> unsafe_variables(const Rule& rule);

struct Program {
  std::vector<Rule> rules;
  std::string source_name;
  std::vector<std::string> warnings;

  bool empty() const { return rules.empty(); }

  // Appends `rule` unless a structurally identical rule exists; duplicates
  // are dropped and noted in `warnings`.
  void add(Rule rule);
  void append(const Program& other);

  friend bool operator==(const Program& a, const Program& b) {
    return a.rules == b.rules;
  }
};

enum class Provenance : std::uint8_t { kStated, kInferred, kGenerated };

std::string_view to_string(Provenance p);

// Deduplicated set of ground atoms with a provenance tag per fact.
class FactBase {
 public:
  FactBase() = default;

  // Returns false if the atom was already present (provenance unchanged).
  bool insert(Atom atom, Provenance provenance = Provenance::kStated);
  bool erase(const Atom& atom);
  bool contains(const Atom& atom) const;

  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  std::optional<Provenance> provenance(const Atom& atom) const;

  // Iterates in the canonical atom order.
  auto begin() const { return facts_.begin(); }
  auto end() const { return facts_.end(); }

  // The facts as a Program of fact rules, in canonical order.
  Program to_program() const;

  friend bool operator==(const FactBase& a, const FactBase& b) {
    return a.facts_ == b.facts_;
  }

 private:
  std::map<Atom, Provenance> facts_;
};

// Natural ("version") ordering: digit runs compare numerically, so
// shot2 < shot10.
bool natural_less(std::string_view a, std::string_view b);
int natural_compare(std::string_view a, std::string_view b);

struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const {
    return natural_less(a, b);
  }
};

// Term ordering used wherever output must be sorted for people: symbols
// and text compare naturally, integers numerically.
bool term_natural_less(const Term& a, const Term& b);

}  // namespace tic

#endif  // TIC_IR_HPP_
