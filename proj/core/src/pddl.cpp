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

#include "tic/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tic/errors.hpp"

namespace tic {

// ---------------------------------------------------------------------------
// S-expressions

bool SExpr::starts_with(std::string_view head) const {
  return is_list && !items.empty() && items.front().is_token(head);
}

std::string SExpr::to_string() const {
  if (!is_list) return token;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += items[i].to_string();
  }
  out.push_back(')');
  return out;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  std::vector<SExpr> stack;
  std::vector<SExpr> top;
  std::size_t line = 1;
  std::size_t i = 0;
  auto emit = [&](SExpr e) {
    if (stack.empty()) {
      top.push_back(std::move(e));
    } else {
      stack.back().items.push_back(std::move(e));
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      SExpr e;
      e.is_list = true;
      e.line = line;
      stack.push_back(std::move(e));
      ++i;
    } else if (c == ')') {
      if (stack.empty()) {
        throw SExprError("unbalanced ')' at line " + std::to_string(line));
      }
      SExpr done = std::move(stack.back());
      stack.pop_back();
      emit(std::move(done));
      ++i;
    } else {
      SExpr e;
      e.line = line;
      while (i < text.size() && text[i] != '(' && text[i] != ')' &&
             text[i] != ';' &&
             !std::isspace(static_cast<unsigned char>(text[i]))) {
        e.token.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(text[i]))));
        ++i;
      }
      emit(std::move(e));
    }
  }
  if (!stack.empty()) {
    throw SExprError("unbalanced '(' opened at line " +
                     std::to_string(stack.back().line));
  }
  return top;
}

namespace {

// `a b - t c - (either u v) d` -> [(a,[t]), (b,[t]), (c,[u,v]), (d,[object])]
std::vector<TypedParameter> parse_typed_list(const std::vector<SExpr>& items,
                                             std::size_t begin) {
  std::vector<TypedParameter> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr& e = items[i];
    if (e.is_token("-")) {
      if (i + 1 >= items.size()) {
        throw SExprError("dangling '-' in typed list at line " +
                         std::to_string(e.line));
      }
      const SExpr& type = items[++i];
      std::vector<std::string> types;
      if (type.is_list) {
        if (!type.starts_with("either")) {
          throw SExprError("expected type or (either ...) at line " +
                           std::to_string(type.line));
        }
        for (std::size_t k = 1; k < type.items.size(); ++k) {
          types.push_back(type.items[k].token);
        }
      } else {
        types.push_back(type.token);
      }
      for (std::string& name : pending) {
        out.push_back({std::move(name), types});
      }
      pending.clear();
    } else if (e.is_list) {
      throw SExprError("unexpected list in typed list at line " +
                       std::to_string(e.line));
    } else {
      pending.push_back(e.token);
    }
  }
  for (std::string& name : pending) out.push_back({std::move(name), {"object"}});
  return out;
}

const SExpr& expect_define(const std::vector<SExpr>& top, const char* what) {
  for (const SExpr& e : top) {
    if (e.starts_with("define")) return e;
  }
  throw SExprError(std::string("no (define ...) form in ") + what);
}

std::string header_name(const SExpr& define, std::string_view keyword) {
  if (define.items.size() < 2 || !define.items[1].starts_with(keyword) ||
      define.items[1].items.size() != 2) {
    throw SExprError("expected (" + std::string(keyword) + " <name>)");
  }
  return define.items[1].items[1].token;
}

std::string dash_variant(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Domain

bool DomainModel::is_typed() const {
  return std::any_of(types.begin(), types.end(),
                     [](const auto& kv) { return kv.first != "object"; });
}

std::optional<std::string> DomainModel::resolve_type(
    std::string_view ir_name) const {
  if (ir_name == "object") return std::string("object");
  if (types.count(std::string(ir_name))) return std::string(ir_name);
  std::string dashed = dash_variant(ir_name);
  if (types.count(dashed)) return dashed;
  return std::nullopt;
}

const PredicateSignature* DomainModel::resolve_predicate(
    std::string_view ir_name) const {
  for (const PredicateSignature& p : predicates) {
    if (p.name == ir_name) return &p;
  }
  const std::string dashed = dash_variant(ir_name);
  for (const PredicateSignature& p : predicates) {
    if (p.name == dashed) return &p;
  }
  return nullptr;
}

bool DomainModel::is_subtype(std::string_view type,
                             std::string_view ancestor) const {
  std::string current(type);
  for (std::size_t guard = 0; guard <= types.size() + 1; ++guard) {
    if (current == ancestor) return true;
    if (current == "object") return false;
    auto it = types.find(current);
    if (it == types.end()) return ancestor == "object";
    current = it->second;
  }
  return false;
}

DomainModel parse_domain(std::string_view text) {
  const std::vector<SExpr> top = parse_sexprs(text);
  const SExpr& define = expect_define(top, "domain");
  DomainModel d;
  d.name = header_name(define, "domain");
  d.types["object"] = "object";

  for (std::size_t i = 2; i < define.items.size(); ++i) {
    const SExpr& section = define.items[i];
    if (!section.is_list || section.items.empty()) {
      throw SExprError("expected a domain section at line " +
                       std::to_string(section.line));
    }
    const std::string& key = section.items.front().token;
    if (key == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        d.requirements.push_back(section.items[k].token);
      }
    } else if (key == ":types") {
      for (TypedParameter& t : parse_typed_list(section.items, 1)) {
        if (t.types.size() != 1) {
          throw SExprError("(either ...) is not a valid supertype for " +
                           t.variable);
        }
        if (d.types.count(t.variable) && t.variable != "object") {
          d.warnings.push_back("type " + t.variable + " declared twice");
        }
        if (t.variable != "object") d.types[t.variable] = t.types.front();
      }
    } else if (key == ":constants") {
      for (TypedParameter& t : parse_typed_list(section.items, 1)) {
        d.constants[t.variable] = t.types.front();
      }
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& p = section.items[k];
        if (!p.is_list || p.items.empty() || p.items.front().is_list) {
          throw SExprError("malformed predicate declaration at line " +
                           std::to_string(p.line));
        }
        PredicateSignature sig;
        sig.name = p.items.front().token;
        sig.parameters = parse_typed_list(p.items, 1);
        d.predicates.push_back(std::move(sig));
      }
    } else if (key == ":functions") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& f = section.items[k];
        if (f.is_list && !f.items.empty()) {
          d.functions.push_back(f.items.front().token);
        }
      }
    } else if (key == ":action" || key == ":durative-action" ||
               key == ":derived") {
      // Action schemas are not needed for task compilation.
    } else {
      d.warnings.push_back("skipped unknown section " + key);
    }
  }
  // Parents, parameter types and constant types that were never declared
  // themselves hang off "object".
  std::vector<std::string> missing;
  for (const auto& [type, parent] : d.types) {
    if (!d.types.count(parent)) missing.push_back(parent);
  }
  for (const PredicateSignature& sig : d.predicates) {
    for (const TypedParameter& p : sig.parameters) {
      for (const std::string& t : p.types) {
        if (!d.types.count(t)) missing.push_back(t);
      }
    }
  }
  for (const auto& [name, type] : d.constants) {
    if (!d.types.count(type)) missing.push_back(type);
  }
  for (const std::string& m : missing) d.types[m] = "object";
  return d;
}

// ---------------------------------------------------------------------------
// Task

std::string PddlAtom::to_string() const {
  std::string out = "(" + predicate;
  for (const std::string& a : args) out += " " + a;
  out.push_back(')');
  return out;
}

std::string NumericFact::to_string() const {
  std::string out = "(= (" + function;
  for (const std::string& a : args) out += " " + a;
  out += ") " + value + ")";
  return out;
}

bool PddlAtomLess::operator()(const PddlAtom& a, const PddlAtom& b) const {
  if (int c = natural_compare(a.predicate, b.predicate); c != 0) return c < 0;
  return std::lexicographical_compare(a.args.begin(), a.args.end(),
                                      b.args.begin(), b.args.end(),
                                      NaturalLess());
}

std::size_t TaskPddl::object_count() const {
  std::size_t n = 0;
  for (const auto& [type, ids] : objects) n += ids.size();
  return n;
}

std::map<std::string, std::string> TaskPddl::object_types() const {
  std::map<std::string, std::string> out;
  for (const auto& [type, ids] : objects) {
    for (const std::string& id : ids) out[id] = type;
  }
  return out;
}

namespace {

PddlAtom to_pddl_atom(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items.front().is_list) {
    throw SExprError("expected a ground atom at line " +
                     std::to_string(e.line));
  }
  PddlAtom a;
  a.predicate = e.items.front().token;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    if (e.items[i].is_list) {
      throw SExprError("nested term in atom at line " +
                       std::to_string(e.line));
    }
    a.args.push_back(e.items[i].token);
  }
  return a;
}

NumericFact to_numeric_fact(const SExpr& e) {
  // (= (f a b) value)
  if (e.items.size() != 3 || !e.items[1].is_list ||
      e.items[1].items.empty() || e.items[2].is_list) {
    throw SExprError("malformed numeric initialisation at line " +
                     std::to_string(e.line));
  }
  NumericFact f;
  f.function = e.items[1].items.front().token;
  for (std::size_t i = 1; i < e.items[1].items.size(); ++i) {
    f.args.push_back(e.items[1].items[i].token);
  }
  f.value = e.items[2].token;
  return f;
}

void flatten_goal(const SExpr& e, std::set<PddlAtom>& out) {
  if (e.starts_with("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      flatten_goal(e.items[i], out);
    }
    return;
  }
  if (e.starts_with("not") || e.starts_with("or") ||
      e.starts_with("forall") || e.starts_with("exists") ||
      e.starts_with("imply") || e.starts_with("when")) {
    throw SExprError("unsupported goal construct (" + e.items.front().token +
                     " ...) at line " + std::to_string(e.line));
  }
  out.insert(to_pddl_atom(e));
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != '.') {
      return false;
    }
  }
  return true;
}

}  // namespace

TaskPddl parse_task(std::string_view text) {
  const std::vector<SExpr> top = parse_sexprs(text);
  const SExpr& define = expect_define(top, "task");
  TaskPddl t;
  t.problem_name = header_name(define, "problem");

  for (std::size_t i = 2; i < define.items.size(); ++i) {
    const SExpr& section = define.items[i];
    if (!section.is_list || section.items.empty()) {
      throw SExprError("expected a task section at line " +
                       std::to_string(section.line));
    }
    const std::string& key = section.items.front().token;
    if (key == ":domain") {
      if (section.items.size() != 2) throw SExprError("malformed (:domain)");
      t.domain_name = section.items[1].token;
    } else if (key == ":objects") {
      for (TypedParameter& p : parse_typed_list(section.items, 1)) {
        if (p.types.size() != 1) {
          throw SExprError("object " + p.variable + " has an (either) type");
        }
        t.objects[p.types.front()].push_back(p.variable);
      }
    } else if (key == ":init") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& e = section.items[k];
        if (e.starts_with("=")) {
          t.numeric_init.insert(to_numeric_fact(e));
        } else {
          t.init.insert(to_pddl_atom(e));
        }
      }
    } else if (key == ":goal") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        flatten_goal(section.items[k], t.goal);
      }
    } else if (key == ":metric") {
      std::string m;
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        if (k > 1) m.push_back(' ');
        m += section.items[k].to_string();
      }
      t.metric = m;
    } else {
      throw SExprError("unknown task section " + key);
    }
  }
  for (auto& [type, ids] : t.objects) {
    std::sort(ids.begin(), ids.end(), NaturalLess());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }

  const std::map<std::string, std::string> declared = t.object_types();
  auto check = [&](const std::vector<std::string>& args, const char* where) {
    for (const std::string& a : args) {
      if (!declared.count(a) && !looks_numeric(a)) {
        throw UndeclaredObject("object " + a + " used in " + where +
                               " is not declared in :objects");
      }
    }
  };
  for (const PddlAtom& a : t.init) check(a.args, ":init");
  for (const NumericFact& f : t.numeric_init) check(f.args, ":init");
  for (const PddlAtom& a : t.goal) check(a.args, ":goal");
  return t;
}

std::string serialize_task(const TaskPddl& task) {
  std::ostringstream os;
  os << "(define (problem " << task.problem_name << ")\n";
  os << "  (:domain " << task.domain_name << ")\n";

  std::vector<std::string> types;
  for (const auto& [type, ids] : task.objects) {
    if (!ids.empty()) types.push_back(type);
  }
  std::sort(types.begin(), types.end(), NaturalLess());
  if (!types.empty()) {
    const bool untyped = types.size() == 1 && types.front() == "object";
    os << "  (:objects\n";
    for (const std::string& type : types) {
      std::vector<std::string> ids = task.objects.at(type);
      std::sort(ids.begin(), ids.end(), NaturalLess());
      os << "   ";
      for (const std::string& id : ids) os << " " << id;
      if (!untyped) os << " - " << type;
      os << "\n";
    }
    os << "  )\n";
  }

  std::vector<PddlAtom> init(task.init.begin(), task.init.end());
  std::sort(init.begin(), init.end(), PddlAtomLess());
  os << "  (:init\n";
  for (const PddlAtom& a : init) os << "    " << a.to_string() << "\n";
  for (const NumericFact& f : task.numeric_init) {
    os << "    " << f.to_string() << "\n";
  }
  os << "  )\n";

  std::vector<PddlAtom> goal(task.goal.begin(), task.goal.end());
  std::sort(goal.begin(), goal.end(), PddlAtomLess());
  os << "  (:goal (and\n";
  for (const PddlAtom& a : goal) os << "    " << a.to_string() << "\n";
  os << "  ))\n";
  if (task.metric) os << "  (:metric " << *task.metric << ")\n";
  os << ")\n";
  return os.str();
}

void validate_task(const TaskPddl& task, const DomainModel& domain) {
  std::map<std::string, std::string> declared = task.object_types();
  for (const auto& [c, type] : domain.constants) declared.emplace(c, type);

  for (const auto& [type, ids] : task.objects) {
    if (!domain.types.count(type)) {
      throw CompileError("object type " + type + " is not declared in domain " +
                         domain.name);
    }
  }
  auto check_atom = [&](const PddlAtom& a, const char* where) {
    const PredicateSignature* sig = domain.resolve_predicate(a.predicate);
    if (sig == nullptr) {
      throw CompileError("predicate " + a.predicate + " in " + where +
                         " is not declared in domain " + domain.name);
    }
    if (sig->arity() != a.args.size()) {
      throw CompileError("predicate " + a.predicate + " expects " +
                         std::to_string(sig->arity()) + " arguments, got " +
                         std::to_string(a.args.size()));
    }
    for (const std::string& arg : a.args) {
      if (!declared.count(arg)) {
        throw UndeclaredObject("object " + arg + " used in " + where +
                               " " + a.to_string() + " is not declared");
      }
    }
  };
  for (const PddlAtom& a : task.init) check_atom(a, ":init");
  for (const PddlAtom& a : task.goal) check_atom(a, ":goal");
  for (const NumericFact& f : task.numeric_init) {
    for (const std::string& arg : f.args) {
      if (!declared.count(arg)) {
        throw UndeclaredObject("object " + arg + " used in " + f.to_string() +
                               " is not declared");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

constexpr std::string_view kMetricDirective = "min_cost_metric";

bool is_grid_predicate(std::string_view name) {
  return name.size() > 5 && name.substr(name.size() - 5) == "_grid";
}

std::string term_to_object(const Term& t, const Atom& context) {
  if (t.is_symbol()) return t.name();
  if (t.is_integer()) return std::to_string(t.value());
  throw CompileError("argument " + t.to_string() + " of " +
                     context.to_string() + " is not an object name");
}

}  // namespace

TaskPddl compile_task(const FactBase& facts, const DomainModel& domain,
                      std::string problem_name,
                      const CompileOptions& options) {
  TaskPddl task;
  task.problem_name = std::move(problem_name);
  task.domain_name = domain.name;

  // Objects named as grid positions; they keep the dash spelling of PDDL.
  std::set<std::string> grid_objects;
  std::map<std::string, std::set<std::string>> types_of;
  for (const auto& [atom, prov] : facts) {
    std::optional<Atom> inner;
    if ((atom.predicate == "init" || atom.predicate == "goal") &&
        atom.arity() == 1) {
      inner = Atom::from_term(atom.args.front());
    } else {
      inner = atom;
    }
    if (inner && is_grid_predicate(inner->predicate) && inner->arity() == 3 &&
        inner->args[2].is_symbol()) {
      grid_objects.insert(inner->args[2].name());
    }
    if (atom.predicate == "object" && atom.arity() == 2 &&
        atom.args[0].is_symbol() && atom.args[1].is_symbol()) {
      if (auto type = domain.resolve_type(atom.args[1].name())) {
        types_of[atom.args[0].name()].insert(*type);
      }
    }
  }

  std::map<std::string, std::string> rename;
  auto mapped = [&](const std::string& id) {
    auto it = rename.find(id);
    return it == rename.end() ? id : it->second;
  };

  for (const auto& [object, types] : types_of) {
    if (domain.constants.count(object)) continue;
    std::vector<std::string> minimal;
    for (const std::string& t : types) {
      bool has_more_specific = false;
      for (const std::string& u : types) {
        if (u != t && domain.is_subtype(u, t)) has_more_specific = true;
      }
      if (!has_more_specific) minimal.push_back(t);
    }
    if (minimal.size() != 1) {
      std::string list;
      for (const std::string& t : minimal) list += " " + t;
      throw TypeConflict("object " + object + " has incompatible types:" +
                         list);
    }
    const std::string& type = minimal.front();
    if ((options.hyphenate_grid_objects && grid_objects.count(object)) ||
        options.hyphenate_types.count(type)) {
      std::string dashed = object;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      rename[object] = dashed;
    }
    task.objects[type].push_back(mapped(object));
  }
  for (auto& [type, ids] : task.objects) {
    std::sort(ids.begin(), ids.end(), NaturalLess());
  }

  for (const auto& [atom, prov] : facts) {
    if ((atom.predicate != "init" && atom.predicate != "goal") ||
        atom.arity() != 1) {
      continue;
    }
    const std::optional<Atom> inner = Atom::from_term(atom.args.front());
    if (!inner) continue;
    const bool is_init = atom.predicate == "init";

    if (inner->predicate == kMetricDirective) {
      if (!is_init || inner->arity() != 1 || !inner->args[0].is_text()) {
        throw CompileError("malformed directive " + atom.to_string());
      }
      std::vector<SExpr> parsed;
      try {
        parsed = parse_sexprs(inner->args[0].name());
      } catch (const SExprError& e) {
        throw CompileError("min_cost_metric payload is not an s-expression: " +
                           std::string(e.what()));
      }
      if (parsed.size() != 1 || !parsed[0].starts_with("=")) {
        throw CompileError("min_cost_metric payload must be (= (f) v)");
      }
      NumericFact f = to_numeric_fact(parsed[0]);
      if (domain.has_functions()) {
        task.metric = "minimize (" + f.function + ")";
      }
      task.numeric_init.insert(std::move(f));
      continue;
    }

    const PredicateSignature* sig = domain.resolve_predicate(inner->predicate);
    if (sig == nullptr) continue;
    if (sig->arity() != inner->arity()) {
      throw CompileError("predicate " + inner->predicate + " expects " +
                         std::to_string(sig->arity()) + " arguments in " +
                         atom.to_string());
    }
    PddlAtom out;
    out.predicate = sig->name;
    for (const Term& t : inner->args) {
      out.args.push_back(mapped(term_to_object(t, atom)));
    }
    (is_init ? task.init : task.goal).insert(std::move(out));
  }

  if (task.goal.empty()) {
    throw EmptyGoal("compiled task " + task.problem_name + " has no goal atoms");
  }
  validate_task(task, domain);
  return task;
}

}  // namespace tic
