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

#include "tic/inference.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "tic/errors.hpp"

namespace tic {

std::string NamingTemplates::format(std::string_view type,
                                    std::int64_t index) const {
  auto it = by_type_.find(std::string(type));
  std::string out = it == by_type_.end() ? "{type}{i}" : it->second;
  auto replace_all = [&out](std::string_view from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = out.find(from, pos)) != std::string::npos) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("{type}", std::string(type));
  replace_all("{i}", std::to_string(index));
  return out;
}

std::string MapSpec::to_string() const {
  return state + "(map(" + left_type + ", " + relation + ", " + right_type +
         "))";
}

namespace {

constexpr std::string_view kWildcard = "*";

bool is_wrapper(std::string_view p) { return p == "init" || p == "goal"; }

bool is_wrapper_atom(const Atom& a) {
  return is_wrapper(a.predicate) && a.arity() == 1;
}

std::string functor_key(const std::string& name, std::size_t arity) {
  return name + "/" + std::to_string(arity);
}

// Key of the atom a wrapped term stands for, if it can be known
// statically.
std::optional<std::string> wrapped_key(const Term& t) {
  if (t.is_symbol()) return functor_key(t.name(), 0);
  if (t.is_compound()) return functor_key(t.name(), t.args().size());
  if (t.is_external()) {
    const auto& args = t.args();
    std::size_t pos = 0;
    if (t.name() == "make_seq") {
      pos = 2;
    } else if (t.name() == "make_fact" || t.name() == "make_map") {
      pos = 1;
    } else {
      return std::nullopt;
    }
    if (pos < args.size() && args[pos].is_symbol()) {
      return functor_key(args[pos].name(), 2);
    }
  }
  return std::nullopt;
}

bool keys_unify(const std::string& a, const std::string& b) {
  if (a == b) return true;
  const std::size_t ca = a.find(':');
  const std::size_t cb = b.find(':');
  if (ca == std::string::npos || cb == std::string::npos) return false;
  if (a.compare(0, ca, b, 0, cb) != 0 || ca != cb) return false;
  return a.substr(ca + 1) == kWildcard || b.substr(cb + 1) == kWildcard;
}

// Index keys under which a ground fact is stored.
void fact_keys(const Atom& a, std::string& base, std::string& refined) {
  base = functor_key(a.predicate, a.arity());
  refined.clear();
  if (is_wrapper_atom(a)) {
    if (auto k = wrapped_key(a.args.front())) refined = base + ":" + *k;
  }
}

// Key used to look up candidates for a body pattern.
std::string lookup_key(const Atom& pattern) {
  const std::string base = functor_key(pattern.predicate, pattern.arity());
  if (is_wrapper_atom(pattern)) {
    const Term& inner = pattern.args.front();
    if (inner.is_symbol() || inner.is_compound()) {
      return base + ":" + *wrapped_key(inner);
    }
  }
  return base;
}

}  // namespace

std::string predicate_key(const Atom& atom) {
  std::string base = functor_key(atom.predicate, atom.arity());
  if (!is_wrapper_atom(atom)) return base;
  auto inner = wrapped_key(atom.args.front());
  return base + ":" + (inner ? *inner : std::string(kWildcard));
}

// ---------------------------------------------------------------------------
// Stratification

Strata stratify(const Program& program) {
  std::vector<const Rule*> rules;
  for (const Rule& r : program.rules) {
    if (!r.is_fact()) rules.push_back(&r);
  }

  std::set<std::string> head_keys;
  for (const Rule* r : rules) head_keys.insert(predicate_key(r->head));

  std::map<std::string, std::size_t> id;
  std::vector<std::string> names;
  auto node = [&](const std::string& k) {
    auto [it, inserted] = id.emplace(k, names.size());
    if (inserted) names.push_back(k);
    return it->second;
  };
  for (const std::string& k : head_keys) node(k);

  struct Edge {
    std::size_t to;
    bool negative;
  };
  std::vector<std::vector<Edge>> edges;
  auto add_edge = [&](std::size_t from, std::size_t to, bool negative) {
    if (edges.size() < names.size()) edges.resize(names.size());
    edges[from].push_back({to, negative});
  };
  for (const Rule* r : rules) {
    const std::size_t h = node(predicate_key(r->head));
    for (const BodyElement& e : r->body) {
      if (!e.is_literal()) continue;
      const std::string b = predicate_key(e.literal.atom);
      const bool neg = e.literal.negated;
      add_edge(h, node(b), neg);
      for (const std::string& hk : head_keys) {
        if (hk != b && keys_unify(hk, b)) add_edge(h, node(hk), neg);
      }
    }
  }
  edges.resize(names.size());

  // Tarjan; components come out dependencies first.
  const std::size_t n = names.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack, component(n, 0);
  std::vector<std::vector<std::size_t>> components;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const Edge& e : edges[v]) {
      if (index[e.to] < 0) {
        visit(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component[w] = components.size();
        comp.push_back(w);
      } while (w != v);
      components.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }

  std::vector<std::size_t> level(components.size(), 0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t v : components[c]) {
      for (const Edge& e : edges[v]) {
        const std::size_t d = component[e.to];
        if (d == c) {
          if (e.negative) {
            std::vector<std::string> cycle;
            for (std::size_t w : components[c]) cycle.push_back(names[w]);
            std::sort(cycle.begin(), cycle.end());
            std::string desc;
            for (const std::string& k : cycle) {
              desc += desc.empty() ? k : ", " + k;
            }
            throw Unstratifiable("negation inside a dependency cycle: " +
                                 names[v] + " depends negatively on " +
                                 names[e.to] + " (cycle: " + desc + ")");
          }
          continue;
        }
        level[c] = std::max(level[c], level[d] + (e.negative ? 1 : 0));
      }
    }
  }

  Strata strata;
  std::size_t top = 0;
  for (std::size_t v = 0; v < n; ++v) {
    strata.stratum_of[names[v]] = level[component[v]];
    top = std::max(top, level[component[v]]);
  }
  strata.groups.resize(top + 1);
  for (const Rule* r : rules) {
    strata.groups[strata.stratum_of.at(predicate_key(r->head))].push_back(*r);
  }
  return strata;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

std::int64_t int_arg(const BuiltinCall& call, std::size_t i) {
  const Term& t = call.args[i];
  if (!t.is_integer()) {
    throw BuiltinError("@" + call.name + " expects an integer as argument " +
                       std::to_string(i + 1) + ", got " + t.to_string());
  }
  return t.value();
}

const std::string& symbol_arg(const BuiltinCall& call, std::size_t i) {
  const Term& t = call.args[i];
  if (!t.is_symbol()) {
    throw BuiltinError("@" + call.name + " expects a symbol as argument " +
                       std::to_string(i + 1) + ", got " + t.to_string());
  }
  return t.name();
}

void expect_arity(const BuiltinCall& call, std::size_t n) {
  if (call.args.size() != n) {
    throw BuiltinArity("@" + call.name + " takes " + std::to_string(n) +
                       " arguments, got " +
                       std::to_string(call.args.size()));
  }
}

}  // namespace

BuiltinResult eval_builtin(const BuiltinCall& call, const FactBase& context,
                           const NamingTemplates& naming) {
  (void)context;
  for (const Term& a : call.args) {
    if (!a.is_ground()) {
      throw NonGroundBuiltin("@" + call.name + " called with non-ground " +
                             "argument " + a.to_string());
    }
  }
  BuiltinResult out;
  if (call.name == "make_seq") {
    expect_arity(call, 4);
    const std::int64_t count = int_arg(call, 0);
    const std::string& prefix = symbol_arg(call, 1);
    const std::string& pred = symbol_arg(call, 2);
    const std::int64_t first = int_arg(call, 3);
    if (count < 0) {
      throw BuiltinError("@make_seq called with negative count " +
                         std::to_string(count));
    }
    for (std::int64_t i = first; i < first + count; ++i) {
      out.terms.push_back(Term::compound(
          pred, {Term::symbol(prefix + std::to_string(i)),
                 Term::symbol(prefix + std::to_string(i + 1))}));
    }
  } else if (call.name == "gen_objects") {
    expect_arity(call, 3);
    const std::int64_t count = int_arg(call, 0);
    const std::int64_t base = int_arg(call, 1);
    const std::string& type = symbol_arg(call, 2);
    if (count < 0) {
      throw BuiltinError("@gen_objects called with negative count " +
                         std::to_string(count));
    }
    for (std::int64_t i = 1; i <= count; ++i) {
      out.terms.push_back(Term::symbol(naming.format(type, base + i)));
    }
  } else if (call.name == "make_id") {
    expect_arity(call, 2);
    out.terms.push_back(
        Term::symbol(naming.format(symbol_arg(call, 1), int_arg(call, 0))));
  } else if (call.name == "make_fact") {
    expect_arity(call, 3);
    out.terms.push_back(
        Term::compound(symbol_arg(call, 1), {call.args[0], call.args[2]}));
  } else if (call.name == "make_map") {
    expect_arity(call, 4);
    int_arg(call, 3);
    out.map_request =
        MapSpec{"", symbol_arg(call, 0), symbol_arg(call, 1),
                symbol_arg(call, 2)};
  } else {
    throw BuiltinError("unknown external predicate @" + call.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cardinality and map expansion

namespace {

std::vector<Term> objects_of(const FactBase& facts, const std::string& type) {
  std::vector<Term> out;
  for (const auto& [atom, prov] : facts) {
    if (atom.predicate == "object" && atom.arity() == 2 &&
        atom.args[1].is_symbol() && atom.args[1].name() == type) {
      out.push_back(atom.args[0]);
    }
  }
  std::sort(out.begin(), out.end(), term_natural_less);
  return out;
}

std::set<std::string> all_object_ids(const FactBase& facts) {
  std::set<std::string> out;
  for (const auto& [atom, prov] : facts) {
    if (atom.predicate == "object" && atom.arity() == 2 &&
        atom.args[0].is_symbol()) {
      out.insert(atom.args[0].name());
    }
  }
  return out;
}

std::vector<CardinalitySpec> cardinality_specs(const FactBase& facts) {
  std::map<std::string, std::int64_t> by_type;
  for (const auto& [atom, prov] : facts) {
    if (atom.predicate != "cardinality" || atom.arity() != 2) continue;
    if (!atom.args[0].is_symbol() || !atom.args[1].is_integer()) {
      throw BuiltinError("malformed cardinality fact " + atom.to_string());
    }
    auto [it, inserted] =
        by_type.emplace(atom.args[0].name(), atom.args[1].value());
    if (!inserted && it->second != atom.args[1].value()) {
      throw Error("CardinalityConflict",
                  "conflicting cardinalities for type " + it->first + ": " +
                      std::to_string(it->second) + " and " +
                      std::to_string(atom.args[1].value()));
    }
  }
  std::vector<CardinalitySpec> out;
  for (const auto& [type, n] : by_type) out.push_back({type, n});
  return out;
}

bool is_map_atom(const Atom& a) {
  if (!is_wrapper_atom(a)) return false;
  const Term& inner = a.args.front();
  return inner.is_compound() && inner.name() == "map" &&
         inner.args().size() == 3;
}

MapSpec map_spec_of(const Atom& a) {
  const Term& inner = a.args.front();
  for (const Term& t : inner.args()) {
    if (!t.is_symbol()) {
      throw BuiltinError("map arguments must be symbols in " + a.to_string());
    }
  }
  return MapSpec{a.predicate, inner.args()[0].name(), inner.args()[1].name(),
                 inner.args()[2].name()};
}

Atom map_atom_of(const MapSpec& spec) {
  return Atom(spec.state,
              {Term::compound("map", {Term::symbol(spec.left_type),
                                      Term::symbol(spec.relation),
                                      Term::symbol(spec.right_type)})});
}

[[noreturn]] void throw_map_mismatch(const MapSpec& spec, std::size_t left,
                                     std::size_t right) {
  throw MapArityMismatch(spec.to_string() + ": " + std::to_string(left) +
                         " objects of type " + spec.left_type + " but " +
                         std::to_string(right) + " of type " +
                         spec.right_type);
}

// The facts a map stands for, or nullopt when the counts differ.
std::optional<std::vector<Atom>> map_facts(const FactBase& facts,
                                           const MapSpec& spec,
                                           std::size_t* left_count = nullptr,
                                           std::size_t* right_count = nullptr) {
  const std::vector<Term> left = objects_of(facts, spec.left_type);
  const std::vector<Term> right = objects_of(facts, spec.right_type);
  if (left_count) *left_count = left.size();
  if (right_count) *right_count = right.size();
  if (left.size() != right.size()) return std::nullopt;
  std::vector<Atom> out;
  for (std::size_t i = 0; i < left.size(); ++i) {
    out.emplace_back(spec.state,
                     std::vector<Term>{Term::compound(
                         spec.relation, {left[i], right[i]})});
  }
  return out;
}

}  // namespace

FactBase expand_cardinalities(const FactBase& facts,
                              const std::vector<CardinalitySpec>& specs,
                              const NamingTemplates& naming) {
  FactBase out = facts;
  std::set<std::string> used = all_object_ids(facts);
  for (const CardinalitySpec& spec : specs) {
    const std::size_t named = objects_of(out, spec.type_name).size();
    if (spec.required_count < 0 ||
        named > static_cast<std::size_t>(spec.required_count)) {
      throw CardinalityViolation(
          spec.type_name, named,
          static_cast<std::size_t>(std::max<std::int64_t>(0,
                                                          spec.required_count)));
    }
    std::size_t missing = static_cast<std::size_t>(spec.required_count) - named;
    for (std::int64_t i = 1; missing > 0; ++i) {
      std::string id = naming.format(spec.type_name, i);
      if (used.count(id)) continue;
      used.insert(id);
      out.insert(Atom("object", {Term::symbol(id), Term::symbol(spec.type_name)}),
                 Provenance::kGenerated);
      --missing;
    }
  }
  return out;
}

FactBase expand_maps(const FactBase& facts,
                     const std::vector<MapSpec>& specs) {
  FactBase out = facts;
  for (const MapSpec& spec : specs) {
    std::size_t l = 0, r = 0;
    auto expanded = map_facts(facts, spec, &l, &r);
    if (!expanded) throw_map_mismatch(spec, l, r);
    for (Atom& a : *expanded) out.insert(std::move(a), Provenance::kInferred);
    out.erase(map_atom_of(spec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Bindings {
 public:
  const Term* find(const std::string& name) const {
    for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }
  void push(const std::string& name, Term value) {
    slots_.emplace_back(name, std::move(value));
  }
  std::size_t mark() const { return slots_.size(); }
  void reset(std::size_t mark) { slots_.resize(mark); }

  Binding to_map() const {
    Binding out;
    for (const auto& [k, v] : slots_) out.emplace(k, v);
    return out;
  }

 private:
  std::vector<std::pair<std::string, Term>> slots_;
};

std::optional<std::int64_t> eval_int(const Term& t, const Bindings& b) {
  switch (t.kind()) {
    case Term::Kind::kInteger:
      return t.value();
    case Term::Kind::kVariable: {
      const Term* v = b.find(t.name());
      if (v && v->is_integer()) return v->value();
      return std::nullopt;
    }
    case Term::Kind::kArith: {
      auto l = eval_int(t.args()[0], b);
      auto r = eval_int(t.args()[1], b);
      if (!l || !r) return std::nullopt;
      const std::string& op = t.name();
      if (op == "+") return *l + *r;
      if (op == "-") return *l - *r;
      if (op == "*") return *l * *r;
      if (op == "/") {
        if (*r == 0) return std::nullopt;
        return *l / *r;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// Substitutes bound variables and evaluates arithmetic. Externals are left
// in place. Returns nullopt if a variable is unbound or arithmetic fails.
std::optional<Term> resolve(const Term& t, const Bindings& b) {
  switch (t.kind()) {
    case Term::Kind::kVariable: {
      const Term* v = b.find(t.name());
      if (!v) return std::nullopt;
      return *v;
    }
    case Term::Kind::kAnonymous:
      return std::nullopt;
    case Term::Kind::kArith: {
      auto v = eval_int(t, b);
      if (!v) return std::nullopt;
      return Term::integer(*v);
    }
    case Term::Kind::kCompound:
    case Term::Kind::kExternal: {
      std::vector<Term> args;
      for (const Term& a : t.args()) {
        auto r = resolve(a, b);
        if (!r) return std::nullopt;
        args.push_back(std::move(*r));
      }
      return t.is_compound() ? Term::compound(t.name(), std::move(args))
                             : Term::external(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

bool same_functor(const Term& pattern, const Term& ground) {
  auto arity_zero_symbol = [](const Term& t) {
    return t.is_symbol() || (t.is_compound() && t.args().empty());
  };
  if (arity_zero_symbol(pattern) && arity_zero_symbol(ground)) {
    return pattern.name() == ground.name();
  }
  return false;
}

bool match(const Term& pattern, const Term& ground, Bindings& b) {
  switch (pattern.kind()) {
    case Term::Kind::kAnonymous:
      return true;
    case Term::Kind::kVariable: {
      if (const Term* v = b.find(pattern.name())) return *v == ground;
      b.push(pattern.name(), ground);
      return true;
    }
    case Term::Kind::kArith: {
      auto v = eval_int(pattern, b);
      return v && ground.is_integer() && ground.value() == *v;
    }
    case Term::Kind::kCompound: {
      if (same_functor(pattern, ground)) return true;
      if (!ground.is_compound() || ground.name() != pattern.name() ||
          ground.args().size() != pattern.args().size()) {
        return false;
      }
      for (std::size_t i = 0; i < pattern.args().size(); ++i) {
        if (!match(pattern.args()[i], ground.args()[i], b)) return false;
      }
      return true;
    }
    case Term::Kind::kExternal:
      throw BuiltinError("external @" + pattern.name() +
                         " may only appear in a rule head");
    case Term::Kind::kSymbol:
      return pattern == ground || same_functor(pattern, ground);
    default:
      return pattern == ground;
  }
}

bool match_atom(const Atom& pattern, const Atom& ground, Bindings& b) {
  if (pattern.predicate != ground.predicate ||
      pattern.arity() != ground.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match(pattern.args[i], ground.args[i], b)) return false;
  }
  return true;
}

// Variables a body element needs bound before it can be evaluated.
void arith_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_arith()) {
    t.collect_variables(out);
    return;
  }
  for (const Term& a : t.args()) arith_variables(a, out);
}

struct FactIndex {
  std::unordered_map<std::string, std::vector<const Atom*>> by_key;

  void add(const Atom* a) {
    std::string base, refined;
    fact_keys(*a, base, refined);
    by_key[base].push_back(a);
    if (!refined.empty()) by_key[refined].push_back(a);
  }
  const std::vector<const Atom*>& lookup(const std::string& key) const {
    static const std::vector<const Atom*> kEmpty;
    auto it = by_key.find(key);
    return it == by_key.end() ? kEmpty : it->second;
  }
  void clear() { by_key.clear(); }
};

class FactStore {
 public:
  // Returns the stored atom when it is new, nullptr otherwise.
  const Atom* add(Atom atom, Provenance p) {
    auto [it, inserted] = facts_.emplace(std::move(atom), p);
    if (!inserted) return nullptr;
    index_.add(&it->first);
    return &it->first;
  }
  bool contains(const Atom& a) const { return facts_.count(a) > 0; }
  const FactIndex& index() const { return index_; }

  FactBase to_fact_base() const {
    FactBase out;
    for (const auto& [a, p] : facts_) out.insert(a, p);
    return out;
  }

 private:
  std::map<Atom, Provenance> facts_;
  FactIndex index_;
};

struct Step {
  enum class Kind { kPositive, kNegative, kCompare };
  Kind kind;
  const BodyElement* element;
  std::string key;
  bool recursive = false;
};

struct CompiledRule {
  const Rule* rule;
  std::vector<Step> steps;
  std::vector<std::size_t> recursive_steps;
};

CompiledRule compile_rule(const Rule& rule,
                          const std::set<std::string>& stratum_heads) {
  CompiledRule out{&rule, {}, {}};
  std::set<std::string> bound;
  std::vector<bool> used(rule.body.size(), false);
  auto all_bound = [&bound](const std::set<std::string>& vars) {
    return std::all_of(vars.begin(), vars.end(), [&bound](const auto& v) {
      return bound.count(v) > 0;
    });
  };
  for (std::size_t placed = 0; placed < rule.body.size(); ++placed) {
    std::size_t chosen = rule.body.size();
    for (std::size_t i = 0; i < rule.body.size() && chosen == rule.body.size();
         ++i) {
      if (used[i]) continue;
      const BodyElement& e = rule.body[i];
      if (e.is_literal()) {
        std::set<std::string> vars;
        if (e.literal.negated) {
          e.literal.atom.collect_variables(vars);
        } else {
          for (const Term& t : e.literal.atom.args) arith_variables(t, vars);
        }
        if (all_bound(vars)) chosen = i;
      } else {
        std::set<std::string> lv, rv;
        e.comparison.left.collect_variables(lv);
        e.comparison.right.collect_variables(rv);
        const bool assign_left = e.comparison.op == CompareOp::kEq &&
                                 e.comparison.left.is_variable() &&
                                 !bound.count(e.comparison.left.name()) &&
                                 all_bound(rv);
        const bool assign_right = e.comparison.op == CompareOp::kEq &&
                                  e.comparison.right.is_variable() &&
                                  !bound.count(e.comparison.right.name()) &&
                                  all_bound(lv);
        if ((all_bound(lv) && all_bound(rv)) || assign_left || assign_right) {
          chosen = i;
        }
      }
    }
    if (chosen == rule.body.size()) {
      std::set<std::string> vars;
      for (const BodyElement& e : rule.body) {
        if (e.is_literal()) {
          e.literal.atom.collect_variables(vars);
        } else {
          e.comparison.left.collect_variables(vars);
          e.comparison.right.collect_variables(vars);
        }
      }
      std::string missing;
      for (const std::string& v : vars) {
        if (!bound.count(v)) {
          missing = v;
          break;
        }
      }
      throw UnsafeRule(rule.location.line, missing);
    }
    used[chosen] = true;
    const BodyElement& e = rule.body[chosen];
    Step step{Step::Kind::kCompare, &e, {}, false};
    if (e.is_literal()) {
      step.kind = e.literal.negated ? Step::Kind::kNegative
                                    : Step::Kind::kPositive;
      step.key = lookup_key(e.literal.atom);
      if (!e.literal.negated) {
        e.literal.atom.collect_variables(bound);
        const std::string pk = predicate_key(e.literal.atom);
        for (const std::string& h : stratum_heads) {
          if (keys_unify(h, pk)) step.recursive = true;
        }
      }
    } else {
      e.comparison.left.collect_variables(bound);
      e.comparison.right.collect_variables(bound);
    }
    if (step.recursive) out.recursive_steps.push_back(out.steps.size());
    out.steps.push_back(std::move(step));
  }
  return out;
}

bool compare_terms(CompareOp op, const Term& l, const Term& r) {
  if (l.is_integer() && r.is_integer()) {
    const std::int64_t a = l.value();
    const std::int64_t b = r.value();
    switch (op) {
      case CompareOp::kEq: return a == b;
      case CompareOp::kNe: return a != b;
      case CompareOp::kLt: return a < b;
      case CompareOp::kLe: return a <= b;
      case CompareOp::kGt: return a > b;
      case CompareOp::kGe: return a >= b;
    }
  }
  const auto c = l <=> r;
  switch (op) {
    case CompareOp::kEq: return c == 0;
    case CompareOp::kNe: return c != 0;
    case CompareOp::kLt: return c < 0;
    case CompareOp::kLe: return c <= 0;
    case CompareOp::kGt: return c > 0;
    case CompareOp::kGe: return c >= 0;
  }
  return false;
}

class Engine {
 public:
  Engine(const Strata& strata, const NamingTemplates& naming)
      : naming_(naming) {
    for (const std::vector<Rule>& group : strata.groups) {
      std::set<std::string> heads;
      for (const Rule& r : group) heads.insert(predicate_key(r.head));
      Stratum s;
      for (const Rule& r : group) {
        CompiledRule c = compile_rule(r, heads);
        (r.is_default() ? s.defaults : s.rules).push_back(std::move(c));
      }
      strata_.push_back(std::move(s));
    }
  }

  struct Result {
    FactBase facts;
    std::set<MapSpec> map_requests;
  };

  Result saturate(const FactBase& base) {
    store_ = FactStore();
    requests_.clear();
    for (const auto& [a, p] : base) store_.add(a, p);
    for (const Stratum& s : strata_) run_stratum(s);
    return {store_.to_fact_base(), requests_};
  }

 private:
  struct Stratum {
    std::vector<CompiledRule> rules;
    std::vector<CompiledRule> defaults;
  };

  void run_stratum(const Stratum& s) {
    std::vector<Atom> produced;
    for (const CompiledRule& r : s.rules) evaluate(r, kNoDelta, produced);
    commit(produced);
    fixpoint(s);
    while (!s.defaults.empty()) {
      std::vector<Atom> candidates;
      for (const CompiledRule& r : s.defaults) {
        evaluate(r, kNoDelta, candidates);
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
      delta_.clear();
      bool added = false;
      for (Atom& c : candidates) {
        if (store_.contains(c) || guarded(c)) continue;
        if (const Atom* a = store_.add(std::move(c), Provenance::kInferred)) {
          delta_.add(a);
          added = true;
        }
      }
      if (!added) break;
      fixpoint(s);
    }
  }

  // Semi-naive iteration from the current delta.
  void fixpoint(const Stratum& s) {
    std::vector<Atom> produced;
    while (!delta_.by_key.empty()) {
      for (const CompiledRule& r : s.rules) {
        for (std::size_t step : r.recursive_steps) {
          evaluate(r, step, produced);
        }
      }
      commit(produced);
    }
  }

  void commit(std::vector<Atom>& produced) {
    delta_.clear();
    for (Atom& a : produced) {
      if (const Atom* stored = store_.add(std::move(a), Provenance::kInferred)) {
        delta_.add(stored);
      }
    }
    produced.clear();
  }

  // A default head is blocked by any fact with the same predicate and the
  // same first argument (under the same wrapper).
  bool guarded(const Atom& candidate) const {
    std::string base, refined;
    fact_keys(candidate, base, refined);
    const bool wrapped = !refined.empty();
    const Atom inner = wrapped ? *Atom::from_term(candidate.args.front())
                               : candidate;
    if (inner.args.empty()) return false;
    for (const Atom* f : store_.index().lookup(wrapped ? refined : base)) {
      const Atom other = wrapped ? *Atom::from_term(f->args.front()) : *f;
      if (other.args.size() == inner.args.size() &&
          other.args.front() == inner.args.front()) {
        return true;
      }
    }
    return false;
  }

  static constexpr std::size_t kNoDelta = static_cast<std::size_t>(-1);

  void evaluate(const CompiledRule& r, std::size_t delta_step,
                std::vector<Atom>& out) {
    Bindings b;
    join(r, 0, delta_step, b, out);
  }

  void join(const CompiledRule& r, std::size_t i, std::size_t delta_step,
            Bindings& b, std::vector<Atom>& out) {
    if (i == r.steps.size()) {
      instantiate_head(r.rule->head, b, out);
      return;
    }
    const Step& step = r.steps[i];
    const std::size_t mark = b.mark();
    switch (step.kind) {
      case Step::Kind::kPositive: {
        const FactIndex& source = i == delta_step ? delta_ : store_.index();
        const std::vector<const Atom*>& candidates = source.lookup(step.key);
        for (const Atom* f : candidates) {
          if (match_atom(step.element->literal.atom, *f, b)) {
            join(r, i + 1, delta_step, b, out);
          }
          b.reset(mark);
        }
        return;
      }
      case Step::Kind::kNegative: {
        for (const Atom* f : store_.index().lookup(step.key)) {
          const bool hit = match_atom(step.element->literal.atom, *f, b);
          b.reset(mark);
          if (hit) return;
        }
        join(r, i + 1, delta_step, b, out);
        return;
      }
      case Step::Kind::kCompare: {
        const Comparison& c = step.element->comparison;
        if (c.op == CompareOp::kEq) {
          if (c.left.is_variable() && !b.find(c.left.name())) {
            if (auto v = resolve(c.right, b)) {
              b.push(c.left.name(), *v);
              join(r, i + 1, delta_step, b, out);
              b.reset(mark);
            }
            return;
          }
          if (c.right.is_variable() && !b.find(c.right.name())) {
            if (auto v = resolve(c.left, b)) {
              b.push(c.right.name(), *v);
              join(r, i + 1, delta_step, b, out);
              b.reset(mark);
            }
            return;
          }
        }
        auto l = resolve(c.left, b);
        auto rv = resolve(c.right, b);
        if (l && rv && compare_terms(c.op, *l, *rv)) {
          join(r, i + 1, delta_step, b, out);
        }
        return;
      }
    }
  }

  std::vector<Term> expand(const Term& t, const Bindings& b,
                           const std::string& wrapper) {
    switch (t.kind()) {
      case Term::Kind::kVariable: {
        const Term* v = b.find(t.name());
        if (!v) throw UnsafeRule(0, t.name());
        return {*v};
      }
      case Term::Kind::kArith: {
        auto v = eval_int(t, b);
        if (!v) {
          throw BuiltinError("cannot evaluate arithmetic " + t.to_string());
        }
        return {Term::integer(*v)};
      }
      case Term::Kind::kCompound:
      case Term::Kind::kExternal: {
        std::vector<std::vector<Term>> combos{{}};
        for (const Term& a : t.args()) {
          std::vector<Term> options = expand(a, b, wrapper);
          std::vector<std::vector<Term>> next;
          for (const auto& prefix : combos) {
            for (const Term& o : options) {
              next.push_back(prefix);
              next.back().push_back(o);
            }
          }
          combos = std::move(next);
        }
        std::vector<Term> out;
        for (auto& args : combos) {
          if (t.is_compound()) {
            out.push_back(Term::compound(t.name(), std::move(args)));
            continue;
          }
          BuiltinResult res = eval_builtin(BuiltinCall{t.name(), args},
                                           FactBase(), naming_);
          if (res.map_request) {
            if (wrapper.empty()) {
              throw BuiltinError("@make_map must appear inside init(...) or "
                                 "goal(...)");
            }
            res.map_request->state = wrapper;
            requests_.insert(*res.map_request);
          }
          for (Term& r : res.terms) out.push_back(std::move(r));
        }
        return out;
      }
      case Term::Kind::kAnonymous:
        throw UnsafeRule(0, "_");
      default:
        return {t};
    }
  }

  void instantiate_head(const Atom& head, const Bindings& b,
                        std::vector<Atom>& out) {
    const std::string wrapper = is_wrapper_atom(head) ? head.predicate : "";
    std::vector<std::vector<Term>> combos{{}};
    for (const Term& a : head.args) {
      std::vector<Term> options = expand(a, b, wrapper);
      std::vector<std::vector<Term>> next;
      for (const auto& prefix : combos) {
        for (const Term& o : options) {
          next.push_back(prefix);
          next.back().push_back(o);
        }
      }
      combos = std::move(next);
    }
    for (auto& args : combos) out.emplace_back(head.predicate, std::move(args));
  }

  NamingTemplates naming_;
  std::vector<Stratum> strata_;
  FactStore store_;
  FactIndex delta_;
  std::set<MapSpec> requests_;
};

}  // namespace

FactBase materialize(const Program& ir, const Program& pack_rules,
                     const MaterializeOptions& options) {
  FactBase base;
  Program rules;
  for (const Rule& r : ir.rules) {
    if (r.is_fact()) {
      base.insert(r.head, Provenance::kStated);
    } else {
      rules.rules.push_back(r);
    }
  }
  for (const Rule& r : pack_rules.rules) {
    if (r.is_fact()) {
      base.insert(r.head, Provenance::kInferred);
    } else {
      rules.rules.push_back(r);
    }
  }

  const Strata strata = stratify(rules);
  Engine engine(strata, options.naming);
  std::set<MapSpec> expanded;

  for (std::size_t round = 0; round < options.max_rounds; ++round) {
    Engine::Result sat = engine.saturate(base);

    const FactBase grown = expand_cardinalities(
        sat.facts, cardinality_specs(sat.facts), options.naming);
    if (grown.size() != sat.facts.size()) {
      for (const auto& [a, p] : grown) {
        if (p == Provenance::kGenerated && !sat.facts.contains(a)) {
          base.insert(a, p);
        }
      }
      continue;
    }

    std::set<MapSpec> pending = sat.map_requests;
    for (const auto& [a, p] : sat.facts) {
      if (is_map_atom(a)) pending.insert(map_spec_of(a));
    }
    for (const MapSpec& done : expanded) pending.erase(done);

    if (pending.empty()) {
      for (const MapSpec& spec : expanded) {
        std::size_t l = 0, r = 0;
        if (!map_facts(sat.facts, spec, &l, &r)) throw_map_mismatch(spec, l, r);
      }
      FactBase out;
      for (const auto& [a, p] : sat.facts) {
        if (!is_map_atom(a)) out.insert(a, p);
      }
      return out;
    }

    bool progress = false;
    std::optional<MapSpec> stuck;
    std::size_t stuck_l = 0, stuck_r = 0;
    for (const MapSpec& spec : pending) {
      std::size_t l = 0, r = 0;
      auto facts = map_facts(sat.facts, spec, &l, &r);
      if (!facts) {
        if (!stuck) {
          stuck = spec;
          stuck_l = l;
          stuck_r = r;
        }
        continue;
      }
      for (Atom& a : *facts) base.insert(std::move(a), Provenance::kInferred);
      expanded.insert(spec);
      progress = true;
    }
    if (!progress) throw_map_mismatch(*stuck, stuck_l, stuck_r);
  }
  throw Error("MaterializeDiverged",
              "materialization did not converge within " +
                  std::to_string(options.max_rounds) + " rounds");
}

std::vector<Binding> query(const FactBase& facts, const Atom& pattern) {
  std::set<std::string> vars;
  pattern.collect_variables(vars);
  std::vector<Binding> out;
  for (const auto& [a, p] : facts) {
    Bindings b;
    if (!match_atom(pattern, a, b)) continue;
    Binding full = b.to_map();
    Binding named;
    for (const std::string& v : vars) {
      auto it = full.find(v);
      if (it != full.end()) named.emplace(v, it->second);
    }
    out.push_back(std::move(named));
  }
  std::sort(out.begin(), out.end(), [](const Binding& x, const Binding& y) {
    auto ix = x.begin();
    auto iy = y.begin();
    for (; ix != x.end() && iy != y.end(); ++ix, ++iy) {
      if (term_natural_less(ix->second, iy->second)) return true;
      if (term_natural_less(iy->second, ix->second)) return false;
    }
    return x.size() < y.size();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tic
