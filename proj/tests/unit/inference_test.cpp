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

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tic/domain_pack.hpp"
#include "tic/errors.hpp"
#include "tic/inference.hpp"
#include "tic/ir_parser.hpp"

namespace tic {
namespace {

using testing::read_text;
using testing::source_path;

// Parsed as a body literal so that patterns may hold variables.
Atom atom(const std::string& text) {
  return parse_program("q :- " + text + ".").rules.at(0).body.at(0).literal.atom;
}

FactBase facts(const std::string& text) {
  FactBase fb;
  for (const Rule& r : parse_program(text).rules) fb.insert(r.head);
  return fb;
}

FactBase run(const DomainPack& pack, const std::string& ir) {
  MaterializeOptions opts;
  opts.naming = pack.naming;
  return materialize(parse_program(ir), pack.rules(), opts);
}

std::size_t count_wrapped(const FactBase& fb, const std::string& wrapper,
                          const std::string& inner) {
  return query(fb, atom(wrapper + "(" + inner + "(A, B))")).size();
}

// ---------------------------------------------------------------------------
// stratify

TEST(Stratify, FloortileRobotsBelowClear) {
  const Strata s = stratify(load_builtin_pack("floortile").rules());
  const std::size_t robot_at = s.stratum_of.at("init/1:robot_at/2");
  const std::size_t clear = s.stratum_of.at("init/1:clear/1");
  EXPECT_LT(robot_at, clear);
}

TEST(Stratify, NegativeCycle) {
  EXPECT_THROW(stratify(parse_program("p :- not q.\nq :- not p.")),
               Unstratifiable);
  EXPECT_THROW(stratify(parse_program("p(X) :- r(X), not p(X).")),
               Unstratifiable);
}

TEST(Stratify, EmptyProgram) {
  const Strata s = stratify(Program{});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.groups[0].empty());
}

TEST(Stratify, NoNegativeEdgeWithinOrAbove) {
  for (const std::string& name : builtin_pack_names()) {
    SCOPED_TRACE(name);
    const Program rules = load_builtin_pack(name).rules();
    const Strata s = stratify(rules);
    for (std::size_t g = 0; g < s.size(); ++g) {
      for (const Rule& r : s.groups[g]) {
        for (const BodyElement& e : r.body) {
          if (!e.is_literal() || !e.literal.negated) continue;
          auto it = s.stratum_of.find(predicate_key(e.literal.atom));
          if (it != s.stratum_of.end()) EXPECT_LT(it->second, g);
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// expand_cardinalities

TEST(ExpandCardinalities, GeneratesMissingShot) {
  const FactBase in = facts(
      "object(shot1, shot). object(shot2, shot). object(shot3, shot). "
      "object(shot4, shot).");
  const FactBase out = expand_cardinalities(in, {{"shot", 5}});
  EXPECT_EQ(out.size(), 5u);
  EXPECT_EQ(out.provenance(atom("object(shot5, shot)")),
            Provenance::kGenerated);
}

TEST(ExpandCardinalities, ExactlySatisfied) {
  const FactBase in = facts(
      "object(shot1, shot). object(shot2, shot). object(shot3, shot). "
      "object(shot4, shot).");
  EXPECT_EQ(expand_cardinalities(in, {{"shot", 4}}), in);
}

TEST(ExpandCardinalities, Violation) {
  const FactBase in = facts(
      "object(shot1, shot). object(shot2, shot). object(shot3, shot). "
      "object(shot4, shot).");
  try {
    expand_cardinalities(in, {{"shot", 3}});
    FAIL() << "expected CardinalityViolation";
  } catch (const CardinalityViolation& e) {
    EXPECT_EQ(e.type(), "shot");
    EXPECT_EQ(e.named(), 4u);
    EXPECT_EQ(e.required(), 3u);
  }
}

TEST(ExpandCardinalities, FillsSmallestUnusedIndices) {
  const FactBase in =
      facts("object(shot1, shot). object(shot3, shot). object(shot7, shot).");
  const FactBase out = expand_cardinalities(in, {{"shot", 5}});
  EXPECT_TRUE(out.contains(atom("object(shot2, shot)")));
  EXPECT_TRUE(out.contains(atom("object(shot4, shot)")));
  EXPECT_EQ(out.size(), 5u);
}

TEST(ExpandCardinalities, NamingTemplate) {
  const NamingTemplates naming(
      std::map<std::string, std::string>{{"level", "l{i}"}});
  const FactBase out = expand_cardinalities(FactBase{}, {{"level", 2}}, naming);
  EXPECT_TRUE(out.contains(atom("object(l1, level)")));
  EXPECT_TRUE(out.contains(atom("object(l2, level)")));
}

// Random named sets: generated ids never collide and the count is exact.
TEST(ExpandCardinalities, FreshnessProperty) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    FactBase in;
    std::set<std::string> named;
    const int n_named = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < n_named; ++k) {
      const std::string id =
          (rng() % 4 == 0 ? "cup_" : "cup") +
          std::to_string(std::uniform_int_distribution<int>(0, 9)(rng));
      named.insert(id);
      in.insert(Atom("object", {Term::symbol(id), Term::symbol("cup")}));
    }
    const std::int64_t want =
        static_cast<std::int64_t>(named.size()) + (rng() % 5);
    const FactBase out = expand_cardinalities(in, {{"cup", want}});
    std::size_t generated = 0;
    for (const auto& [a, prov] : out) {
      if (prov != Provenance::kGenerated) continue;
      ++generated;
      EXPECT_FALSE(named.count(a.args[0].name())) << a.to_string();
    }
    EXPECT_EQ(out.size(), static_cast<std::size_t>(want));
    EXPECT_EQ(generated, static_cast<std::size_t>(want) - named.size());
  }
}

// ---------------------------------------------------------------------------
// expand_maps

TEST(ExpandMaps, CanonicalBijection) {
  FactBase in = facts(
      "object(dispenser1, dispenser). object(dispenser2, dispenser). "
      "object(dispenser3, dispenser). object(ingredient3, ingredient). "
      "object(ingredient1, ingredient). object(ingredient2, ingredient). "
      "init(map(dispenser, dispenses, ingredient)).");
  const FactBase out =
      expand_maps(in, {{"init", "dispenser", "dispenses", "ingredient"}});
  EXPECT_EQ(count_wrapped(out, "init", "dispenses"), 3u);
  for (int i = 1; i <= 3; ++i) {
    const std::string n = std::to_string(i);
    EXPECT_TRUE(out.contains(
        atom("init(dispenses(dispenser" + n + ", ingredient" + n + "))")));
  }
  EXPECT_FALSE(
      out.contains(atom("init(map(dispenser, dispenses, ingredient))")));
}

TEST(ExpandMaps, EmptySides) {
  const FactBase out =
      expand_maps(FactBase{}, {{"goal", "cell", "holds", "robot"}});
  EXPECT_TRUE(out.empty());
}

TEST(ExpandMaps, Mismatch) {
  const FactBase in = facts(
      "object(dispenser1, dispenser). object(dispenser2, dispenser). "
      "object(dispenser3, dispenser). object(ingredient1, ingredient). "
      "object(ingredient2, ingredient).");
  EXPECT_THROW(
      expand_maps(in, {{"init", "dispenser", "dispenses", "ingredient"}}),
      MapArityMismatch);
}

TEST(ExpandMaps, NaturalOrderPairing) {
  const FactBase in = facts(
      "object(s10, s). object(s2, s). object(s1, s). "
      "object(t1, t). object(t2, t). object(t3, t).");
  const FactBase out = expand_maps(in, {{"init", "s", "r", "t"}});
  EXPECT_TRUE(out.contains(atom("init(r(s1, t1))")));
  EXPECT_TRUE(out.contains(atom("init(r(s2, t2))")));
  EXPECT_TRUE(out.contains(atom("init(r(s10, t3))")));
}

// ---------------------------------------------------------------------------
// eval_builtin

std::vector<std::string> strings(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const Term& t : ts) out.push_back(t.to_string());
  return out;
}

TEST(EvalBuiltin, MakeSeq) {
  const auto r = eval_builtin(
      {"make_seq",
       {Term::integer(2), Term::symbol("level"), Term::symbol("next"),
        Term::integer(0)}},
      FactBase{});
  EXPECT_EQ(strings(r.terms),
            (std::vector<std::string>{"next(level0, level1)",
                                      "next(level1, level2)"}));
  const auto empty = eval_builtin(
      {"make_seq",
       {Term::integer(0), Term::symbol("level"), Term::symbol("next"),
        Term::integer(0)}},
      FactBase{});
  EXPECT_TRUE(empty.terms.empty());
}

TEST(EvalBuiltin, TermesSuccMatchesGroundTruth) {
  const auto r = eval_builtin(
      {"make_seq",
       {Term::integer(2), Term::symbol("n"), Term::symbol("succ"),
        Term::integer(0)}},
      FactBase{});
  EXPECT_EQ(strings(r.terms),
            (std::vector<std::string>{"succ(n0, n1)", "succ(n1, n2)"}));
  const TaskPddl truth = parse_task(
      read_text(source_path("data/dataset/termes/tasks/p01.pddl")));
  for (const Term& t : r.terms) {
    PddlAtom a{t.name(), {t.args()[0].name(), t.args()[1].name()}};
    EXPECT_TRUE(truth.init.count(a)) << a.to_string();
  }
}

TEST(EvalBuiltin, GenObjectsAndFacts) {
  const auto g = eval_builtin(
      {"gen_objects",
       {Term::integer(3), Term::integer(0), Term::symbol("intact_tyre")}},
      FactBase{});
  EXPECT_EQ(strings(g.terms),
            (std::vector<std::string>{"intact_tyre1", "intact_tyre2",
                                      "intact_tyre3"}));
  const auto offset = eval_builtin(
      {"gen_objects",
       {Term::integer(1), Term::integer(4), Term::symbol("w")}},
      FactBase{});
  EXPECT_EQ(strings(offset.terms), (std::vector<std::string>{"w5"}));
  const auto f = eval_builtin(
      {"make_fact",
       {Term::symbol("a"), Term::symbol("on"), Term::symbol("b")}},
      FactBase{});
  EXPECT_EQ(strings(f.terms), (std::vector<std::string>{"on(a, b)"}));
  const auto id = eval_builtin(
      {"make_id", {Term::integer(4), Term::symbol("shot")}}, FactBase{});
  EXPECT_EQ(strings(id.terms), (std::vector<std::string>{"shot4"}));
  const auto m = eval_builtin(
      {"make_map",
       {Term::symbol("cell"), Term::symbol("has"), Term::symbol("robot"),
        Term::integer(2)}},
      FactBase{});
  ASSERT_TRUE(m.map_request.has_value());
  EXPECT_EQ(m.map_request->relation, "has");
}

TEST(EvalBuiltin, Errors) {
  EXPECT_THROW(eval_builtin({"make_seq", {Term::integer(1)}}, FactBase{}),
               BuiltinArity);
  EXPECT_THROW(
      eval_builtin({"make_id", {Term::variable("N"), Term::symbol("a")}},
                   FactBase{}),
      NonGroundBuiltin);
  EXPECT_THROW(eval_builtin({"nope", {}}, FactBase{}), BuiltinError);
}

// ---------------------------------------------------------------------------
// materialize

TEST(Materialize, BarmanP01) {
  const DomainPack barman = load_builtin_pack("barman");
  const FactBase m =
      run(barman, read_text(source_path("tests/fixtures/barman/p01_ir.lp")));
  EXPECT_TRUE(m.contains(atom("object(shot5, shot)")));
  EXPECT_EQ(m.provenance(atom("object(shot5, shot)")), Provenance::kGenerated);
  EXPECT_TRUE(m.contains(atom("init(clean(shot5))")));
  EXPECT_TRUE(m.contains(atom("init(shaker_empty_level(shaker1, level0))")));
  EXPECT_TRUE(m.contains(atom("init(next(level0, level1))")));
  EXPECT_TRUE(m.contains(atom("init(next(level1, level2))")));
  EXPECT_TRUE(m.contains(atom("first_level(level0)")));
  EXPECT_EQ(count_wrapped(m, "init", "dispenses"), 3u);
  EXPECT_EQ(count_wrapped(m, "init", "cocktail_part1"), 4u);
  EXPECT_EQ(count_wrapped(m, "init", "cocktail_part2"), 4u);
  EXPECT_EQ(query(m, atom("goal(G)")).size(), 4u);

  const auto shots = query(m, atom("object(X, shot)"));
  ASSERT_EQ(shots.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(shots[i].at("X").name(), "shot" + std::to_string(i + 1));
  }
}

TEST(Materialize, HandFromHandempty) {
  const FactBase m =
      run(load_builtin_pack("barman"), "init(handempty(left)).");
  EXPECT_TRUE(m.contains(atom("object(left, hand)")));
}

TEST(Materialize, Empty) {
  EXPECT_TRUE(materialize(Program{}, Program{}).empty());
}

TEST(Materialize, DefaultRuleYieldsToStatedGoal) {
  const FactBase m = run(load_builtin_pack("termes"),
                         "init(termes_pos_grid(0, 0, pos_0_0)).\n"
                         "init(termes_pos_grid(0, 1, pos_0_1)).\n"
                         "init(max_height(2)).\n"
                         "goal(height(pos_0_1, n2)).\n");
  EXPECT_TRUE(m.contains(atom("goal(height(pos_0_0, n0))")));
  EXPECT_TRUE(m.contains(atom("goal(height(pos_0_1, n2))")));
  EXPECT_FALSE(m.contains(atom("goal(height(pos_0_1, n0))")));
  EXPECT_TRUE(m.contains(atom("init(succ(n1, n2))")));
}

TEST(Materialize, CardinalityViolationPropagates) {
  EXPECT_THROW(run(load_builtin_pack("barman"),
                   "cardinality(shot, 1).\nobject(shot1, shot).\n"
                   "object(shot2, shot).\n"),
               CardinalityViolation);
}

TEST(Query, EmptyAndSorted) {
  EXPECT_TRUE(query(FactBase{}, atom("object(X, shot)")).empty());
  const FactBase fb = facts("p(b10). p(b2). p(a). q(a).");
  const auto r = query(fb, atom("p(X)"));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].at("X").name(), "a");
  EXPECT_EQ(r[1].at("X").name(), "b2");
  EXPECT_EQ(r[2].at("X").name(), "b10");
}

// ---------------------------------------------------------------------------
// Grid arithmetic against a double loop

std::string grid_ir(int rows, int cols) {
  std::ostringstream ir;
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      ir << "init(floortile_grid(" << r << ", " << c << ", tile_" << r << "_"
         << c << ")).\n";
    }
  }
  return ir.str();
}

std::string tile(int r, int c) {
  return "tile_" + std::to_string(r) + "_" + std::to_string(c);
}

std::set<std::string> wrapped_pairs(const FactBase& fb,
                                    const std::string& pred) {
  std::set<std::string> out;
  for (const Binding& b : query(fb, atom("init(" + pred + "(A, B))"))) {
    out.insert(b.at("A").name() + " " + b.at("B").name());
  }
  return out;
}

TEST(GridDerivation, MatchesDoubleLoop) {
  const DomainPack floortile = load_builtin_pack("floortile");
  for (int rows = 1; rows <= 6; ++rows) {
    for (int cols = 1; cols <= 6; ++cols) {
      SCOPED_TRACE(std::to_string(rows) + "x" + std::to_string(cols));
      const FactBase m = run(floortile, grid_ir(rows, cols));
      std::set<std::string> up, down, right, left;
      for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c <= cols; ++c) {
          if (r > 1) {
            up.insert(tile(r, c) + " " + tile(r - 1, c));
            down.insert(tile(r - 1, c) + " " + tile(r, c));
          }
          if (c > 1) {
            right.insert(tile(r, c) + " " + tile(r, c - 1));
            left.insert(tile(r, c - 1) + " " + tile(r, c));
          }
        }
      }
      EXPECT_EQ(up.size(), static_cast<std::size_t>((rows - 1) * cols));
      EXPECT_EQ(right.size(), static_cast<std::size_t>(rows * (cols - 1)));
      EXPECT_EQ(wrapped_pairs(m, "up"), up);
      EXPECT_EQ(wrapped_pairs(m, "down"), down);
      EXPECT_EQ(wrapped_pairs(m, "right"), right);
      EXPECT_EQ(wrapped_pairs(m, "left"), left);
    }
  }
}

TEST(GridDerivation, ClearTiles) {
  const std::string ir = grid_ir(5, 3) +
                         "init(robot_at(robot1, tile_1_1)).\n"
                         "init(robot_at(robot2, tile_2_3)).\n"
                         "goal(painted(tile_3_1, white)).\n";
  const FactBase m = run(load_builtin_pack("floortile"), ir);
  const auto clear = query(m, atom("init(clear(T))"));
  EXPECT_EQ(clear.size(), 13u);
  std::set<std::string> got;
  for (const Binding& b : clear) got.insert(b.at("T").name());
  EXPECT_FALSE(got.count("tile_1_1"));
  EXPECT_FALSE(got.count("tile_2_3"));
}

// ---------------------------------------------------------------------------
// Properties over random stratified programs

TEST(Materialize, AgreesWithNaiveEvaluator) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const testing::RandomProgram rp = testing::random_program(rng);
    SCOPED_TRACE(rp.text);
    const Program p = parse_program(rp.text);
    EXPECT_EQ(testing::fact_strings(materialize(p, Program{})),
              testing::naive_model(p, rp.level));
  }
}

TEST(Materialize, OrderIndependent) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const testing::RandomProgram rp = testing::random_program(rng);
    Program p = parse_program(rp.text);
    const FactBase base = materialize(p, Program{});
    std::shuffle(p.rules.begin(), p.rules.end(), rng);
    EXPECT_EQ(materialize(p, Program{}), base) << rp.text;
  }
  for (const std::string& name : builtin_pack_names()) {
    SCOPED_TRACE(name);
    const DomainPack pack = load_builtin_pack(name);
    ASSERT_TRUE(pack.example_ir_text.has_value());
    Program ir = pack.example_ir();
    Program rules = pack.rules();
    MaterializeOptions opts;
    opts.naming = pack.naming;
    const FactBase base = materialize(ir, rules, opts);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(ir.rules.begin(), ir.rules.end(), rng);
      std::shuffle(rules.rules.begin(), rules.rules.end(), rng);
      EXPECT_EQ(testing::fact_strings(materialize(ir, rules, opts)),
                testing::fact_strings(base));
      EXPECT_EQ(testing::fact_strings(materialize(rules, ir, opts)),
                testing::fact_strings(base));
    }
  }
}

TEST(Materialize, Idempotent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const testing::RandomProgram rp = testing::random_program(rng);
    const Program p = parse_program(rp.text);
    const FactBase m = materialize(p, Program{});
    EXPECT_EQ(testing::fact_strings(materialize(m.to_program(), p)),
              testing::fact_strings(m))
        << rp.text;
  }
  for (const std::string& name : builtin_pack_names()) {
    SCOPED_TRACE(name);
    const DomainPack pack = load_builtin_pack(name);
    MaterializeOptions opts;
    opts.naming = pack.naming;
    const FactBase m = materialize(pack.example_ir(), pack.rules(), opts);
    EXPECT_EQ(testing::fact_strings(
                  materialize(m.to_program(), pack.rules(), opts)),
              testing::fact_strings(m));
  }
}

// r0 is never negated, so adding r0 facts only ever adds facts.
TEST(Materialize, MonotoneInTopStratum) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const testing::RandomProgram rp = testing::random_program(rng);
    const Program p = parse_program(rp.text);
    const FactBase before = materialize(p, Program{});
    const auto extra = parse_program(
        rp.text + (rp.arity.at("r0") == 1 ? "r0(a).\n" : "r0(b, c).\n"));
    const FactBase after = materialize(extra, Program{});
    for (const auto& [a, prov] : before) {
      EXPECT_TRUE(after.contains(a)) << a.to_string() << "\n" << rp.text;
    }
  }
}

}  // namespace
}  // namespace tic
