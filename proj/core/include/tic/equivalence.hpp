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


// Task equivalence up to a type-respecting renaming of objects.

#ifndef TIC_EQUIVALENCE_HPP_
#define TIC_EQUIVALENCE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "tic/pddl.hpp"

namespace tic {

// Per-type bijection from the objects of one task onto another's.
struct ObjectMapping {
  std::map<std::string, std::map<std::string, std::string>> by_type;

  // Objects outside the mapping (numbers, function names, domain
  // constants) map to themselves.
  std::string apply(const std::string& object) const;
  PddlAtom apply(const PddlAtom& atom) const;
  bool is_identity() const;
  std::string to_json() const;
};

enum class Mismatch {
  kNone,
  kTypes,
  kObjectCounts,
  kInitCounts,
  kGoalCounts,
  kNoMapping,
};

std::string_view to_string(Mismatch m);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<ObjectMapping> witness;
  Mismatch reason = Mismatch::kNone;
  std::string detail;
};

// Init atoms as compared by the checker: the propositional atoms plus one
// `=` atom per numeric fact. The metric is not compared.
std::set<PddlAtom> init_state_atoms(const TaskPddl& task);

// Gate checks in order (type sets, per-type object counts, init and goal
// sizes), then a pruned search for a witness. Throws DomainMismatch.
EquivalenceResult tasks_equivalent(const TaskPddl& a, const TaskPddl& b);

// Enumerates every per-type permutation of b's objects, as the reference
// algorithm does. Throws SearchSpaceTooLarge when the number of
// permutations exceeds `bound`, DomainMismatch as above.
bool brute_force_equivalent(const TaskPddl& a, const TaskPddl& b,
                            std::uint64_t bound = 1'000'000);

// m(s) == t as sets.
bool check_state_equivalence(const ObjectMapping& m,
                             const std::set<PddlAtom>& s,
                             const std::set<PddlAtom>& t);

}  // namespace tic

#endif  // TIC_EQUIVALENCE_HPP_
