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

#include "tic/ir.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tic/errors.hpp"

namespace tic {

// Error constructors live here since every module links ir.cpp.

namespace {

std::string syntax_message(std::size_t line, std::size_t column,
                           const std::string& expected,
                           const std::string& detail) {
  std::ostringstream os;
  os << "syntax error at " << line << ":" << column << ": expected "
     << expected;
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         std::string expected, const std::string& detail)
    : Error("SyntaxError", syntax_message(line, column, expected, detail)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

UnsafeRule::UnsafeRule(std::size_t line, std::string variable)
    : Error("UnsafeRule", "unsafe rule at line " + std::to_string(line) +
                              ": variable " + variable +
                              " is not bound by a positive body literal"),
      line_(line),
      variable_(std::move(variable)) {}

CardinalityViolation::CardinalityViolation(std::string type,
                                           std::size_t named,
                                           std::size_t required)
    : Error("CardinalityViolation",
            "cardinality violation for type " + type + ": " +
                std::to_string(named) + " named objects but cardinality " +
                std::to_string(required)),
      type_(std::move(type)),
      named_(named),
      required_(required) {}

ProviderError::ProviderError(int status, std::string body)
    : Error("ProviderError",
            "provider returned status " + std::to_string(status) + ": " + body),
      status_(status),
      body_(std::move(body)) {}

StageError::StageError(std::string stage, std::string cause_kind,
                       const std::string& message)
    : Error("StageError", stage + ": " + cause_kind + ": " + message),
      stage_(std::move(stage)),
      cause_kind_(std::move(cause_kind)) {}

PlannerNonzeroExit::PlannerNonzeroExit(int exit_code, std::string output)
    : Error("PlannerNonzeroExit",
            "planner exited with status " + std::to_string(exit_code)),
      exit_code_(exit_code),
      output_(std::move(output)) {}

// ---------------------------------------------------------------------------
// Term

Term Term::symbol(std::string name) {
  Term t;
  t.kind_ = Kind::kSymbol;
  t.name_ = std::move(name);
  return t;
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::kInteger;
  t.value_ = value;
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::kVariable;
  t.name_ = std::move(name);
  return t;
}

Term Term::anonymous() {
  Term t;
  t.kind_ = Kind::kAnonymous;
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::kCompound;
  t.name_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

Term Term::external(std::string name, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::kExternal;
  t.name_ = std::move(name);
  t.args_ = std::move(args);
  return t;
}

Term Term::arith(std::string op, Term left, Term right) {
  Term t;
  t.kind_ = Kind::kArith;
  t.name_ = std::move(op);
  t.args_.push_back(std::move(left));
  t.args_.push_back(std::move(right));
  return t;
}

Term Term::text(std::string value) {
  Term t;
  t.kind_ = Kind::kText;
  t.name_ = std::move(value);
  return t;
}

bool Term::is_ground() const {
  switch (kind_) {
    case Kind::kSymbol:
    case Kind::kInteger:
    case Kind::kText:
      return true;
    case Kind::kVariable:
    case Kind::kAnonymous:
    case Kind::kExternal:
    case Kind::kArith:
      return false;
    case Kind::kCompound:
      return std::all_of(args_.begin(), args_.end(),
                         [](const Term& a) { return a.is_ground(); });
  }
  return false;
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind_ == Kind::kVariable) {
    out.insert(name_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

namespace {

int precedence(const std::string& op) {
  return (op == "*" || op == "/") ? 2 : 1;
}

std::string escape_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

void append_args(std::string& out, const std::vector<Term>& args) {
  out.push_back('(');
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += args[i].to_string();
  }
  out.push_back(')');
}

}  // namespace

std::string Term::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::kSymbol:
    case Kind::kVariable:
      return name_;
    case Kind::kInteger:
      return std::to_string(value_);
    case Kind::kAnonymous:
      return "_";
    case Kind::kText:
      return "\"" + escape_text(name_) + "\"";
    case Kind::kCompound:
      out = name_;
      append_args(out, args_);
      return out;
    case Kind::kExternal:
      out = "@" + name_;
      append_args(out, args_);
      return out;
    case Kind::kArith: {
      const Term& l = args_[0];
      const Term& r = args_[1];
      const int p = precedence(name_);
      std::string ls = l.to_string();
      std::string rs = r.to_string();
      if (l.is_arith() && precedence(l.name()) < p) ls = "(" + ls + ")";
      if (r.is_arith() && precedence(r.name()) <= p) rs = "(" + rs + ")";
      // A negative literal on the right reads as a double operator.
      if (r.is_integer() && r.value() < 0) rs = "(" + rs + ")";
      return ls + name_ + rs;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.value_ <=> b.value_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::lexicographical_compare_three_way(
      a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
}

// ---------------------------------------------------------------------------
// Atom

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& a) { return a.is_ground(); });
}

void Atom::collect_variables(std::set<std::string>& out) const {
  for (const Term& a : args) a.collect_variables(out);
}

std::string Atom::to_string() const {
  if (args.empty()) return predicate;
  std::string out = predicate;
  append_args(out, args);
  return out;
}

Term Atom::as_term() const {
  if (args.empty()) return Term::symbol(predicate);
  return Term::compound(predicate, args);
}

std::optional<Atom> Atom::from_term(const Term& t) {
  if (t.is_symbol()) return Atom(t.name(), {});
  if (t.is_compound()) return Atom(t.name(), t.args());
  return std::nullopt;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate.compare(b.predicate); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::lexicographical_compare_three_way(
      a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

// ---------------------------------------------------------------------------
// Rules

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kEq:
      return "=";
    case CompareOp::kNe:
      return "!=";
    case CompareOp::kLt:
      return "<";
    case CompareOp::kLe:
      return "<=";
    case CompareOp::kGt:
      return ">";
    case CompareOp::kGe:
      return ">=";
  }
  return "?";
}

BodyElement BodyElement::of(Literal l) {
  BodyElement e;
  e.kind = Kind::kLiteral;
  e.literal = std::move(l);
  return e;
}

BodyElement BodyElement::of(Comparison c) {
  BodyElement e;
  e.kind = Kind::kComparison;
  e.comparison = std::move(c);
  return e;
}

std::string BodyElement::to_string() const {
  if (kind == Kind::kLiteral) {
    return (literal.negated ? "not " : "") + literal.atom.to_string();
  }
  return comparison.left.to_string() + " " +
         std::string(tic::to_string(comparison.op)) + " " +
         comparison.right.to_string();
}

std::string Rule::to_string() const {
  std::string out;
  if (kind == RuleKind::kDefault) out = "default ";
  out += head.to_string();
  if (!body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i > 0) out += ", ";
      out += body[i].to_string();
    }
  }
  out.push_back('.');
  return out;
}

namespace {

// Variables a positive literal can bind: those outside arithmetic and
// external-call subterms.
void collect_binding_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name());
  } else if (t.is_compound()) {
    for (const Term& a : t.args()) collect_binding_variables(a, out);
  }
}

// Variables that must already be bound when the literal is matched.
void collect_needed_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_arith() || t.is_external()) {
    t.collect_variables(out);
  } else if (t.is_compound()) {
    for (const Term& a : t.args()) collect_needed_variables(a, out);
  }
}

}  // namespace

std::vector<std::string> unsafe_variables(const Rule& rule) {
  std::set<std::string> bound;
  std::set<std::string> needed;
  for (const BodyElement& e : rule.body) {
    if (!e.is_literal()) continue;
    const Literal& lit = e.literal;
    if (lit.negated) {
      lit.atom.collect_variables(needed);
    } else {
      for (const Term& a : lit.atom.args) {
        collect_binding_variables(a, bound);
        collect_needed_variables(a, needed);
      }
    }
  }
  // `X = expr` binds X once everything in expr is bound.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const BodyElement& e : rule.body) {
      if (e.is_literal() || e.comparison.op != CompareOp::kEq) continue;
      const Comparison& c = e.comparison;
      auto try_bind = [&](const Term& var, const Term& expr) {
        if (!var.is_variable() || bound.count(var.name())) return;
        std::set<std::string> vars;
        expr.collect_variables(vars);
        if (std::includes(bound.begin(), bound.end(), vars.begin(),
                          vars.end())) {
          bound.insert(var.name());
          changed = true;
        }
      };
      try_bind(c.left, c.right);
      try_bind(c.right, c.left);
    }
  }
  for (const BodyElement& e : rule.body) {
    if (e.is_literal()) continue;
    e.comparison.left.collect_variables(needed);
    e.comparison.right.collect_variables(needed);
  }
  rule.head.collect_variables(needed);

  std::vector<std::string> unsafe;
  for (const std::string& v : needed) {
    if (!bound.count(v)) unsafe.push_back(v);
  }
  return unsafe;
}

void Program::add(Rule rule) {
  if (std::find(rules.begin(), rules.end(), rule) != rules.end()) {
    warnings.push_back("duplicate rule dropped at line " +
                       std::to_string(rule.location.line) + ": " +
                       rule.to_string());
    return;
  }
  rules.push_back(std::move(rule));
}

void Program::append(const Program& other) {
  for (const Rule& r : other.rules) add(r);
  warnings.insert(warnings.end(), other.warnings.begin(),
                  other.warnings.end());
}

// ---------------------------------------------------------------------------
// FactBase

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kStated:
      return "stated";
    case Provenance::kInferred:
      return "inferred";
    case Provenance::kGenerated:
      return "generated";
  }
  return "?";
}

bool FactBase::insert(Atom atom, Provenance provenance) {
  return facts_.emplace(std::move(atom), provenance).second;
}

bool FactBase::erase(const Atom& atom) { return facts_.erase(atom) > 0; }

bool FactBase::contains(const Atom& atom) const {
  return facts_.count(atom) > 0;
}

std::optional<Provenance> FactBase::provenance(const Atom& atom) const {
  auto it = facts_.find(atom);
  if (it == facts_.end()) return std::nullopt;
  return it->second;
}

Program FactBase::to_program() const {
  Program p;
  for (const auto& [atom, prov] : facts_) {
    Rule r;
    r.head = atom;
    r.kind = RuleKind::kFact;
    p.rules.push_back(std::move(r));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Natural ordering

int natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto is_digit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      std::string_view da = a.substr(i, ie - i);
      std::string_view db = b.substr(j, je - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size() ? -1 : 1;
      if (int c = da.compare(db); c != 0) return c < 0 ? -1 : 1;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  // Equal under natural order ("a01" vs "a1"): fall back to bytes.
  if (int c = a.compare(b); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

bool natural_less(std::string_view a, std::string_view b) {
  return natural_compare(a, b) < 0;
}

bool term_natural_less(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Term::Kind::kInteger:
      return a.value() < b.value();
    case Term::Kind::kSymbol:
    case Term::Kind::kText:
    case Term::Kind::kVariable:
      return natural_less(a.name(), b.name());
    default:
      break;
  }
  if (a.name() != b.name()) return natural_less(a.name(), b.name());
  return std::lexicographical_compare(a.args().begin(), a.args().end(),
                                      b.args().begin(), b.args().end(),
                                      term_natural_less);
}

}  // namespace tic
