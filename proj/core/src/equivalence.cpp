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


#include "tic/equivalence.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "tic/errors.hpp"

namespace tic {

std::string ObjectMapping::apply(const std::string& object) const {
  for (const auto& [type, m] : by_type) {
    if (auto it = m.find(object); it != m.end()) return it->second;
  }
  return object;
}

PddlAtom ObjectMapping::apply(const PddlAtom& atom) const {
  PddlAtom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) out.args.push_back(apply(a));
  return out;
}

bool ObjectMapping::is_identity() const {
  for (const auto& [type, m] : by_type) {
    for (const auto& [from, to] : m) {
      if (from != to) return false;
    }
  }
  return true;
}

std::string ObjectMapping::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [type, m] : by_type) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : m) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), NaturalLess{});
    nlohmann::ordered_json inner = nlohmann::ordered_json::object();
    for (const auto& k : keys) inner[k] = m.at(k);
    j[type] = std::move(inner);
  }
  return j.dump();
}

std::string_view to_string(Mismatch m) {
  switch (m) {
    case Mismatch::kNone:
      return "none";
    case Mismatch::kTypes:
      return "types";
    case Mismatch::kObjectCounts:
      return "object_counts";
    case Mismatch::kInitCounts:
      return "init_counts";
    case Mismatch::kGoalCounts:
      return "goal_counts";
    case Mismatch::kNoMapping:
      return "no_mapping";
  }
  return "unknown";
}

std::set<PddlAtom> init_state_atoms(const TaskPddl& task) {
  std::set<PddlAtom> out = task.init;
  for (const NumericFact& f : task.numeric_init) {
    PddlAtom a{"=", {f.function}};
    a.args.insert(a.args.end(), f.args.begin(), f.args.end());
    a.args.push_back(f.value);
    out.insert(std::move(a));
  }
  return out;
}

bool check_state_equivalence(const ObjectMapping& m,
                             const std::set<PddlAtom>& s,
                             const std::set<PddlAtom>& t) {
  if (s.size() != t.size()) return false;
  std::set<PddlAtom> image;
  for (const PddlAtom& a : s) image.insert(m.apply(a));
  return image == t;
}

namespace {

using TypeMap = std::map<std::string, std::vector<std::string>>;

TypeMap nonempty_types(const TaskPddl& t) {
  TypeMap out;
  for (const auto& [type, objs] : t.objects) {
    if (!objs.empty()) out[type] = objs;
  }
  return out;
}

// The count gates shared by both algorithms. kNone when they all pass.
Mismatch gate(const TaskPddl& a, const TaskPddl& b, std::string& detail) {
  if (a.domain_name != b.domain_name) {
    throw DomainMismatch("tasks are for domains '" + a.domain_name +
                         "' and '" + b.domain_name + "'");
  }
  const TypeMap ta = nonempty_types(a);
  const TypeMap tb = nonempty_types(b);
  std::set<std::string> ka, kb;
  for (const auto& [k, v] : ta) ka.insert(k);
  for (const auto& [k, v] : tb) kb.insert(k);
  if (ka != kb) {
    detail = "object types differ";
    return Mismatch::kTypes;
  }
  for (const auto& [type, objs] : ta) {
    if (objs.size() != tb.at(type).size()) {
      detail = "type '" + type + "' has " + std::to_string(objs.size()) +
               " vs " + std::to_string(tb.at(type).size()) + " objects";
      return Mismatch::kObjectCounts;
    }
  }
  const auto ia = init_state_atoms(a).size();
  const auto ib = init_state_atoms(b).size();
  if (ia != ib) {
    detail = std::to_string(ia) + " vs " + std::to_string(ib) + " init atoms";
    return Mismatch::kInitCounts;
  }
  if (a.goal.size() != b.goal.size()) {
    detail = std::to_string(a.goal.size()) + " vs " +
             std::to_string(b.goal.size()) + " goal atoms";
    return Mismatch::kGoalCounts;
  }
  return Mismatch::kNone;
}

// Both tasks' objects share one index space: a's first, then b's.
class Search {
 public:
  Search(const TaskPddl& a, const TaskPddl& b) {
    add_task(a, 0);
    na_ = static_cast<int>(objects_.size());
    add_task(b, 1);
    init_b_ = init_state_atoms(b);
    goal_b_ = b.goal;
  }

  std::optional<ObjectMapping> run() {
    // Atoms without objects are never reached through an object.
    for (const IndexedAtom& ia : atoms_a_) {
      if (std::any_of(ia.objs.begin(), ia.objs.end(),
                      [](int x) { return x >= 0; })) {
        continue;
      }
      const auto& target = ia.state == 0 ? init_b_ : goal_b_;
      if (!target.count(*ia.atom)) return std::nullopt;
    }
    refine();
    if (!balanced()) return std::nullopt;
    order();
    assigned_.assign(objects_.size(), -1);
    used_.assign(objects_.size(), false);
    if (!extend(0)) return std::nullopt;
    ObjectMapping m;
    for (int i = 0; i < na_; ++i) {
      m.by_type[type_of_[i]][objects_[i]] = objects_[assigned_[i]];
    }
    return m;
  }

 private:
  struct IndexedAtom {
    int state;  // 0 init, 1 goal
    const PddlAtom* atom;
    std::vector<int> objs;  // per argument, -1 for non-objects
  };

  void add_task(const TaskPddl& t, int side) {
    const int base = static_cast<int>(objects_.size());
    std::map<std::string, int> local;
    for (const auto& [type, objs] : t.objects) {
      for (const auto& o : objs) {
        local[o] = static_cast<int>(objects_.size());
        objects_.push_back(o);
        type_of_.push_back(type);
      }
    }
    auto& store = side == 0 ? atoms_a_ : atoms_b_;
    auto& owned = side == 0 ? owned_a_ : owned_b_;
    for (const PddlAtom& a : init_state_atoms(t)) owned.push_back(a);
    for (const PddlAtom& a : t.goal) owned.push_back(a);
    const std::size_t n_init = owned.size() - t.goal.size();
    for (std::size_t i = 0; i < owned.size(); ++i) {
      IndexedAtom ia{i < n_init ? 0 : 1, &owned[i], {}};
      for (const auto& arg : owned[i].args) {
        auto it = local.find(arg);
        ia.objs.push_back(it == local.end() ? -1 : it->second);
      }
      store.push_back(std::move(ia));
    }
    occurs_.resize(objects_.size());
    for (std::size_t i = 0; i < store.size(); ++i) {
      for (int o : store[i].objs) {
        if (o >= base) occurs_[o].push_back({side, i});
      }
    }
    for (auto& occ : occurs_) {
      occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    }
  }

  const IndexedAtom& atom_at(std::pair<int, std::size_t> ref) const {
    return ref.first == 0 ? atoms_a_[ref.second] : atoms_b_[ref.second];
  }

  // Colour refinement over both tasks with a shared palette, so that equal
  // colours mean indistinguishable neighbourhoods.
  void refine() {
    std::map<std::string, int> palette;
    colour_.resize(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      colour_[i] = palette.emplace(type_of_[i], palette.size()).first->second;
    }
    std::size_t classes = palette.size();
    while (true) {
      std::vector<std::string> sig(objects_.size());
      for (std::size_t o = 0; o < objects_.size(); ++o) {
        std::vector<std::string> parts;
        for (const auto& ref : occurs_[o]) {
          const IndexedAtom& ia = atom_at(ref);
          std::string p = std::to_string(ia.state) + ia.atom->predicate;
          for (std::size_t k = 0; k < ia.objs.size(); ++k) {
            p.push_back('|');
            if (ia.objs[k] == static_cast<int>(o)) {
              p += "*";
            } else if (ia.objs[k] < 0) {
              p += "=" + ia.atom->args[k];
            } else {
              p += std::to_string(colour_[ia.objs[k]]);
            }
          }
          parts.push_back(std::move(p));
        }
        std::sort(parts.begin(), parts.end());
        sig[o] = std::to_string(colour_[o]) + "#";
        for (const auto& p : parts) sig[o] += p + ";";
      }
      std::map<std::string, int> next;
      for (const auto& s : sig) next.emplace(s, 0);
      int id = 0;
      for (auto& [s, c] : next) c = id++;
      for (std::size_t o = 0; o < objects_.size(); ++o) colour_[o] = next[sig[o]];
      if (next.size() == classes) break;
      classes = next.size();
    }
  }

  bool balanced() const {
    std::map<int, int> count;
    for (int i = 0; i < static_cast<int>(objects_.size()); ++i) {
      count[colour_[i]] += i < na_ ? 1 : -1;
    }
    return std::all_of(count.begin(), count.end(),
                       [](const auto& kv) { return kv.second == 0; });
  }

  // Most-connected-to-assigned first, then rarest colour, then name.
  void order() {
    std::map<int, int> class_size;
    for (int i = 0; i < na_; ++i) ++class_size[colour_[i]];
    std::vector<std::set<int>> nbrs(na_);
    for (const IndexedAtom& ia : atoms_a_) {
      for (int x : ia.objs) {
        for (int y : ia.objs) {
          if (x >= 0 && y >= 0 && x != y) nbrs[x].insert(y);
        }
      }
    }
    std::vector<bool> placed(na_, false);
    std::vector<int> weight(na_, 0);
    for (int step = 0; step < na_; ++step) {
      int best = -1;
      for (int i = 0; i < na_; ++i) {
        if (placed[i]) continue;
        if (best < 0) {
          best = i;
          continue;
        }
        auto key = [&](int k) {
          return std::make_tuple(-weight[k], class_size[colour_[k]]);
        };
        if (key(i) < key(best) ||
            (key(i) == key(best) && natural_less(objects_[i], objects_[best]))) {
          best = i;
        }
      }
      placed[best] = true;
      order_.push_back(best);
      for (int n : nbrs[best]) ++weight[n];
    }
    candidates_.resize(na_);
    for (int i = 0; i < na_; ++i) {
      for (int j = na_; j < static_cast<int>(objects_.size()); ++j) {
        if (colour_[j] == colour_[i]) candidates_[i].push_back(j);
      }
      std::sort(candidates_[i].begin(), candidates_[i].end(), [&](int x, int y) {
        return natural_less(objects_[x], objects_[y]);
      });
    }
  }

  bool consistent(int o) const {
    for (const auto& ref : occurs_[o]) {
      const IndexedAtom& ia = atom_at(ref);
      PddlAtom image{ia.atom->predicate, {}};
      bool complete = true;
      for (std::size_t k = 0; k < ia.objs.size(); ++k) {
        const int x = ia.objs[k];
        if (x < 0) {
          image.args.push_back(ia.atom->args[k]);
        } else if (assigned_[x] < 0) {
          complete = false;
          break;
        } else {
          image.args.push_back(objects_[assigned_[x]]);
        }
      }
      if (!complete) continue;
      const auto& target = ia.state == 0 ? init_b_ : goal_b_;
      if (!target.count(image)) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const int o = order_[depth];
    for (int c : candidates_[o]) {
      if (used_[c]) continue;
      assigned_[o] = c;
      used_[c] = true;
      if (consistent(o) && extend(depth + 1)) return true;
      used_[c] = false;
      assigned_[o] = -1;
    }
    return false;
  }

  std::vector<std::string> objects_;
  std::vector<std::string> type_of_;
  int na_ = 0;
  std::vector<PddlAtom> owned_a_, owned_b_;
  std::vector<IndexedAtom> atoms_a_, atoms_b_;
  std::vector<std::vector<std::pair<int, std::size_t>>> occurs_;
  std::set<PddlAtom> init_b_, goal_b_;
  std::vector<int> colour_;
  std::vector<int> order_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> assigned_;
  std::vector<bool> used_;
};

}  // namespace

EquivalenceResult tasks_equivalent(const TaskPddl& a, const TaskPddl& b) {
  EquivalenceResult r;
  r.reason = gate(a, b, r.detail);
  if (r.reason != Mismatch::kNone) return r;
  Search search(a, b);
  r.witness = search.run();
  if (!r.witness) {
    r.reason = Mismatch::kNoMapping;
    r.detail = "no object renaming maps one task onto the other";
    return r;
  }
  r.equivalent = true;
  return r;
}

bool brute_force_equivalent(const TaskPddl& a, const TaskPddl& b,
                            std::uint64_t bound) {
  std::string detail;
  if (gate(a, b, detail) != Mismatch::kNone) return false;

  const TypeMap ta = nonempty_types(a);
  TypeMap tb = nonempty_types(b);
  std::uint64_t total = 1;
  for (const auto& [type, objs] : tb) {
    for (std::uint64_t k = 2; k <= objs.size(); ++k) {
      if (total > bound / k) {
        throw SearchSpaceTooLarge("more than " + std::to_string(bound) +
                                  " object permutations");
      }
      total *= k;
    }
  }

  const std::set<PddlAtom> init_a = init_state_atoms(a);
  const std::set<PddlAtom> init_b = init_state_atoms(b);
  // Types in sorted order; each b list starts at its first permutation.
  std::vector<std::string> types;
  for (auto& [type, objs] : tb) {
    std::sort(objs.begin(), objs.end());
    types.push_back(type);
  }
  while (true) {
    ObjectMapping m;
    for (const auto& t : types) {
      const auto& from = ta.at(t);
      const auto& to = tb.at(t);
      for (std::size_t i = 0; i < from.size(); ++i) m.by_type[t][from[i]] = to[i];
    }
    if (check_state_equivalence(m, init_a, init_b) &&
        check_state_equivalence(m, a.goal, b.goal)) {
      return true;
    }
    // Odometer over the per-type permutations.
    std::size_t k = 0;
    for (; k < types.size(); ++k) {
      auto& objs = tb[types[k]];
      if (std::next_permutation(objs.begin(), objs.end())) break;
    }
    if (k == types.size()) return false;
  }
}

}  // namespace tic
