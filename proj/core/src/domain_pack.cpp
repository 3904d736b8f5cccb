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

#include "tic/domain_pack.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "tic/errors.hpp"
#include "tic/resources.hpp"

namespace tic {

namespace {

using Reader = std::function<std::optional<std::string>(const std::string&)>;

std::string ir_spelling(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::vector<std::string> string_list(const nlohmann::json& j,
                                     const char* what) {
  std::vector<std::string> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw PackError(std::string(what) + " must be a list");
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

std::set<PredicateKey> key_list(const nlohmann::json& j, const char* what) {
  std::set<PredicateKey> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw PackError(std::string(what) + " must be a list");
  for (const auto& v : j) {
    out.insert({v.at("predicate").get<std::string>(),
                v.at("arity").get<std::size_t>()});
  }
  return out;
}

void read_meta(DomainPack& pack, const std::string& text) {
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PackError("meta.json of pack " + pack.name +
                    " is not valid JSON: " + e.what());
  }
  try {
    if (meta.contains("domain")) pack.name = meta["domain"].get<std::string>();
    for (const auto& t : meta.value("object_types", nlohmann::json::array())) {
      pack.object_types.push_back({t.at("type").get<std::string>(),
                                   t.value("description", std::string())});
    }
    for (const auto& p : meta.value("predicates", nlohmann::json::array())) {
      PredicateInfo info;
      info.predicate = p.at("predicate").get<std::string>();
      info.arity = p.at("arity").get<std::size_t>();
      info.argument_types =
          string_list(p.value("argument_types", nlohmann::json()),
                      "argument_types");
      info.description = p.value("description", std::string());
      if (info.argument_types.size() != info.arity) {
        throw PackError("predicate " + info.predicate + " declares arity " +
                        std::to_string(info.arity) + " but " +
                        std::to_string(info.argument_types.size()) +
                        " argument types");
      }
      pack.predicates.push_back(std::move(info));
    }
    pack.auxiliary_predicates = key_list(
        meta.value("auxiliary_predicates", nlohmann::json()),
        "auxiliary_predicates");
    pack.directives =
        key_list(meta.value("directives", nlohmann::json()), "directives");
    pack.naming = NamingTemplates(
        meta.value("naming_templates", std::map<std::string, std::string>()));
    for (const std::string& t :
         string_list(meta.value("hyphenate_types", nlohmann::json()),
                     "hyphenate_types")) {
      pack.hyphenate_types.insert(t);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PackError("malformed meta.json in pack " + pack.name + ": " +
                    e.what());
  }
}

DomainPack build_pack(std::string name, const Reader& read,
                      const std::string& origin) {
  DomainPack pack;
  pack.name = std::move(name);
  auto require = [&](const std::string& file) {
    auto text = read(file);
    if (!text) throw MissingFile(origin + "/" + file + " not found");
    return *text;
  };
  const std::string rules_text = require("rules.lp");
  read_meta(pack, require("meta.json"));
  pack.manual_rules = parse_program(rules_text, origin + "/rules.lp");

  pack.example_text = read("example.nl");
  pack.example_ir_text = read("example.lp");
  pack.golden_pddl = read("golden.pddl");
  pack.domain_text = read("domain.pddl");
  if (pack.domain_text) {
    pack.domain = parse_domain(*pack.domain_text);
    pack.derived_rules = derive_type_rules(*pack.domain);
  }
  if (pack.example_ir_text) {
    parse_program(*pack.example_ir_text, origin + "/example.lp");
  }

  const std::vector<Diagnostic> diags = validate_program(pack.rules(), pack);
  if (!diags.empty()) {
    std::string msg = "pack " + pack.name + " rules do not validate:";
    for (const Diagnostic& d : diags) msg += "\n  " + d.message;
    throw PackError(msg);
  }
  return pack;
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Program DomainPack::rules() const {
  Program out;
  out.source_name = name;
  for (const Rule& r : manual_rules.rules) out.add(r);
  for (const Rule& r : derived_rules) out.add(r);
  return out;
}

Program DomainPack::example_ir() const {
  if (!example_ir_text) {
    throw MissingExample("pack " + name + " has no in-context example");
  }
  return parse_program(*example_ir_text, name + "/example.lp");
}

CompileOptions DomainPack::compile_options() const {
  CompileOptions o;
  o.hyphenate_types = hyphenate_types;
  return o;
}

const PredicateInfo* DomainPack::find_predicate(std::string_view n) const {
  for (const PredicateInfo& p : predicates) {
    if (p.predicate == n) return &p;
  }
  return nullptr;
}

DomainPack load_pack(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw MissingFile("pack directory " + directory.string() + " not found");
  }
  Reader read = [&directory](const std::string& file) {
    return read_file(directory / file);
  };
  return build_pack(directory.filename().string(), read, directory.string());
}

std::vector<std::string> builtin_pack_names() {
  std::set<std::string> names;
  const std::string prefix = "packs/";
  for (const std::string& p : embedded_paths(prefix)) {
    const std::size_t slash = p.find('/', prefix.size());
    if (slash != std::string::npos) {
      names.insert(p.substr(prefix.size(), slash - prefix.size()));
    }
  }
  return {names.begin(), names.end()};
}

DomainPack load_builtin_pack(std::string_view name) {
  const std::string dir = "packs/" + std::string(name);
  if (embedded_paths(dir + "/").empty()) {
    throw MissingFile("no builtin pack named " + std::string(name));
  }
  Reader read = [&dir](const std::string& file)
      -> std::optional<std::string> {
    auto content = embedded_file(dir + "/" + file);
    if (!content) return std::nullopt;
    return std::string(*content);
  };
  return build_pack(std::string(name), read, "builtin:" + std::string(name));
}

DomainPack resolve_pack(std::string_view name_or_path) {
  const std::filesystem::path p(name_or_path);
  if (std::filesystem::is_directory(p)) return load_pack(p);
  return load_builtin_pack(name_or_path);
}

std::vector<Rule> derive_type_rules(const DomainModel& domain) {
  std::vector<Rule> out;
  for (const PredicateSignature& sig : domain.predicates) {
    const std::string pred = ir_spelling(sig.name);
    for (std::size_t i = 0; i < sig.parameters.size(); ++i) {
      const auto& types = sig.parameters[i].types;
      if (types.size() != 1 || types.front() == "object") continue;
      const std::string type = ir_spelling(types.front());
      for (const char* wrapper : {"init", "goal"}) {
        std::vector<Term> args;
        for (std::size_t k = 0; k < sig.parameters.size(); ++k) {
          args.push_back(k == i ? Term::variable("X") : Term::anonymous());
        }
        Literal lit;
        lit.atom = Atom(wrapper, {Term::compound(pred, std::move(args))});
        Rule r;
        r.head = Atom("object", {Term::variable("X"), Term::symbol(type)});
        r.body.push_back(BodyElement::of(std::move(lit)));
        r.kind = RuleKind::kRule;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::kUnknownPredicate:
      return "UnknownPredicate";
    case Diagnostic::Kind::kArityMismatch:
      return "ArityMismatch";
    case Diagnostic::Kind::kUnsafeRule:
      return "UnsafeRule";
    case Diagnostic::Kind::kUnknownBuiltin:
      return "UnknownBuiltin";
    case Diagnostic::Kind::kMalformedWrapper:
      return "MalformedWrapper";
  }
  return "Unknown";
}

namespace {

const std::map<std::string, std::size_t>& builtin_arities() {
  static const std::map<std::string, std::size_t> kArities = {
      {"make_id", 2},  {"make_fact", 3},   {"make_seq", 4},
      {"make_map", 4}, {"gen_objects", 3},
  };
  return kArities;
}

bool is_grid(std::string_view name) {
  return name.size() > 5 && name.substr(name.size() - 5) == "_grid";
}

class Validator {
 public:
  Validator(const DomainPack& pack, std::vector<Diagnostic>& out)
      : pack_(pack), out_(out) {}

  void rule(const Rule& r) {
    loc_ = r.location;
    for (const std::string& v : unsafe_variables(r)) {
      report(Diagnostic::Kind::kUnsafeRule, v, 0, 0,
             "variable " + v + " is not bound by a positive body literal");
    }
    atom(r.head);
    for (const BodyElement& e : r.body) {
      if (e.is_literal()) {
        atom(e.literal.atom);
      } else {
        externals(e.comparison.left);
        externals(e.comparison.right);
      }
    }
  }

 private:
  void report(Diagnostic::Kind kind, const std::string& pred,
              std::size_t expected, std::size_t actual, std::string msg) {
    Diagnostic d;
    d.kind = kind;
    d.predicate = pred;
    d.expected_arity = expected;
    d.actual_arity = actual;
    d.location = loc_;
    d.message = "line " + std::to_string(loc_.line) + ": " +
                std::string(to_string(kind)) + ": " + msg;
    out_.push_back(std::move(d));
  }

  void arity(const std::string& pred, std::size_t expected,
             std::size_t actual) {
    if (expected != actual) {
      report(Diagnostic::Kind::kArityMismatch, pred, expected, actual,
             pred + " expects " + std::to_string(expected) +
                 " arguments, got " + std::to_string(actual));
    }
  }

  void externals(const Term& t) {
    if (t.is_external()) {
      auto it = builtin_arities().find(t.name());
      if (it == builtin_arities().end()) {
        report(Diagnostic::Kind::kUnknownBuiltin, "@" + t.name(), 0,
               t.args().size(), "unknown external @" + t.name());
      } else {
        arity("@" + t.name(), it->second, t.args().size());
      }
    }
    for (const Term& a : t.args()) externals(a);
  }

  // Known outside a wrapper: schema, grid, auxiliary and domain predicates.
  bool known(const std::string& pred, std::size_t n, bool wrapped) {
    if (pred == "map" && wrapped) {
      arity(pred, 3, n);
      return true;
    }
    if (is_grid(pred)) {
      arity(pred, 3, n);
      return true;
    }
    if (wrapped) {
      for (const PredicateKey& k : pack_.directives) {
        if (k.predicate == pred) {
          arity(pred, k.arity, n);
          return true;
        }
      }
    }
    if (const PredicateInfo* info = pack_.find_predicate(pred)) {
      arity(pred, info->arity, n);
      return true;
    }
    for (const PredicateKey& k : pack_.auxiliary_predicates) {
      if (k.predicate == pred) {
        arity(pred, k.arity, n);
        return true;
      }
    }
    return false;
  }

  void atom(const Atom& a) {
    for (const Term& t : a.args) externals(t);
    if (a.predicate == "object" || a.predicate == "cardinality") {
      arity(a.predicate, 2, a.arity());
      return;
    }
    if (a.predicate == "init" || a.predicate == "goal") {
      if (a.arity() != 1) {
        arity(a.predicate, 1, a.arity());
        return;
      }
      const Term& inner = a.args.front();
      if (inner.is_external() || inner.is_variable()) return;
      if (!inner.is_atom_shaped()) {
        report(Diagnostic::Kind::kMalformedWrapper, a.predicate, 0, 0,
               a.to_string() + " does not wrap an atom");
        return;
      }
      if (!known(inner.name(), inner.args().size(), true)) {
        report(Diagnostic::Kind::kUnknownPredicate, inner.name(), 0,
               inner.args().size(), "unknown predicate " + inner.name());
      }
      return;
    }
    if (!known(a.predicate, a.arity(), false)) {
      report(Diagnostic::Kind::kUnknownPredicate, a.predicate, 0, a.arity(),
             "unknown predicate " + a.predicate);
    }
  }

  const DomainPack& pack_;
  std::vector<Diagnostic>& out_;
  SourceLocation loc_;
};

}  // namespace

std::vector<Diagnostic> validate_program(const Program& program,
                                         const DomainPack& pack) {
  std::vector<Diagnostic> out;
  Validator v(pack, out);
  for (const Rule& r : program.rules) v.rule(r);
  return out;
}

}  // namespace tic
