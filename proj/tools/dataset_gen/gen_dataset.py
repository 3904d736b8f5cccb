# Copyright 2026 The TIC Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Writes the mini evaluation dataset under data/dataset.

Every task gets a natural-language description, the intermediate
representation a correct translation would produce (tasks/pNN.golden.lp),
and a ground-truth task PDDL written directly from the task parameters,
the way the IPC generators do it. The IR and the PDDL are produced by
separate code paths; `tic eval --golden-ir` checks that they agree.
"""

import argparse
import random
import shutil
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
PACKS = ROOT / "data" / "packs"


def pddl(problem, domain, objects, init, goal, metric=None):
    lines = [f"(define (problem {problem})", f" (:domain {domain})"]
    lines.append(" (:objects")
    for names, typ in objects:
        if not names:
            continue
        suffix = f" - {typ}" if typ else ""
        lines.append("  " + " ".join(names) + suffix)
    lines.append(" )")
    lines.append(" (:init")
    lines += [f"  {a}" for a in init]
    lines.append(" )")
    lines.append(" (:goal (and")
    lines += [f"  {a}" for a in goal]
    lines.append(" ))")
    if metric:
        lines.append(f" (:metric {metric})")
    lines.append(")")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# barman

def barman(name, shots, cocktails, goals, levels=3, ingredients=3):
    """cocktails: [(part1, part2)] ingredient indices; goals: shot -> cocktail."""
    nl = [f"You have 1 shaker with {levels} levels, {shots} shot glasses, "
          f"{ingredients} dispensers for {ingredients} ingredients."]
    nl.append("The shaker and shot glasses are clean, empty, and on the table. "
              "Your left and right hands are empty.")
    for c, (a, b) in enumerate(cocktails, 1):
        nl.append(f"The first ingredient of cocktail{c} is ingredient{a}. "
                  f"The second ingredient of cocktail{c} is ingredient{b}.")
    nl.append(f"Your goal is to make {len(goals)} cocktails.")
    nl.append(" ".join(f"shot{s} contains cocktail{c}." for s, c in goals))

    lp = [f"cardinality(shaker, 1).", f"cardinality(level, {levels}).",
          f"cardinality(shot, {shots}).",
          f"cardinality(dispenser, {ingredients}).",
          f"cardinality(ingredient, {ingredients})."]
    for pred in ("clean", "empty", "ontable"):
        for typ in ("shaker", "shot"):
            lp.append(f"init({pred}(X)) :- object(X, {typ}).")
    lp += ["init(handempty(left)).", "init(handempty(right)).",
           "init(map(dispenser, dispenses, ingredient))."]
    for c, (a, b) in enumerate(cocktails, 1):
        lp.append(f"init(cocktail_part1(cocktail{c}, ingredient{a})).")
        lp.append(f"init(cocktail_part2(cocktail{c}, ingredient{b})).")
    lp += [f"goal(contains(shot{s}, cocktail{c}))." for s, c in goals]

    shot_ids = [f"shot{i}" for i in range(1, shots + 1)]
    lvl = [f"l{i}" for i in range(levels)]
    objects = [(["shaker1"], "shaker"), (["left", "right"], "hand"),
               (shot_ids, "shot"),
               ([f"ingredient{i}" for i in range(1, ingredients + 1)], "ingredient"),
               ([f"cocktail{i}" for i in range(1, len(cocktails) + 1)], "cocktail"),
               ([f"dispenser{i}" for i in range(1, ingredients + 1)], "dispenser"),
               (lvl, "level")]
    init = ["(ontable shaker1)"] + [f"(ontable {s})" for s in shot_ids]
    init += [f"(dispenses dispenser{i} ingredient{i})"
             for i in range(1, ingredients + 1)]
    init += ["(clean shaker1)"] + [f"(clean {s})" for s in shot_ids]
    init += ["(empty shaker1)"] + [f"(empty {s})" for s in shot_ids]
    init += ["(handempty left)", "(handempty right)",
             "(shaker_empty_level shaker1 l0)", "(shaker_level shaker1 l0)"]
    init += [f"(next {lvl[i]} {lvl[i + 1]})" for i in range(levels - 1)]
    for c, (a, b) in enumerate(cocktails, 1):
        init.append(f"(cocktail_part1 cocktail{c} ingredient{a})")
        init.append(f"(cocktail_part2 cocktail{c} ingredient{b})")
    goal = [f"(contains shot{s} cocktail{c})" for s, c in goals]
    return " ".join(nl), lp, pddl(name, "barman", objects, init, goal)


def barman_tasks(rng):
    # p01 is the running example used throughout the documentation.
    yield barman("p01", 5, [(2, 1), (1, 2), (1, 3), (3, 2)],
                 [(1, 1), (2, 4), (3, 3), (4, 2)])
    for name in ("p02", "p03"):
        n_cocktails = rng.randint(2, 4)
        cocktails = [tuple(rng.sample(range(1, 4), 2)) for _ in range(n_cocktails)]
        shots = n_cocktails + 1
        goals = [(s, rng.randint(1, n_cocktails)) for s in range(1, shots)]
        yield barman(name, shots, cocktails, goals)


# ---------------------------------------------------------------------------
# blocksworld

def random_stacks(rng, blocks):
    order = blocks[:]
    rng.shuffle(order)
    stacks, i = [], 0
    while i < len(order):
        h = rng.randint(1, len(order) - i)
        stacks.append(order[i:i + h])
        i += h
    return stacks  # bottom first


def blocksworld(name, rng, n):
    blocks = [f"b{i}" for i in range(1, n + 1)]
    start = random_stacks(rng, blocks)
    target = random_stacks(rng, blocks)
    nl = [f"You have {n} blocks."]
    lp = [f"cardinality(block, {n})."]
    init = ["(arm-empty)"]
    for st in start:
        for below, above in zip(st, st[1:]):
            nl.append(f"{above} is on top of {below}.")
            lp.append(f"init(on({above}, {below})).")
            init.append(f"(on {above} {below})")
    for st in start:
        nl.append(f"{st[0]} is on the table.")
        lp.append(f"init(on_table({st[0]})).")
        init.append(f"(on-table {st[0]})")
    for st in start:
        nl.append(f"{st[-1]} is clear.")
        lp.append(f"init(clear({st[-1]})).")
        init.append(f"(clear {st[-1]})")
    nl.append("Your arm is empty.")
    lp.append("init(arm_empty).")
    nl.append("Your goal is to move the blocks.")
    goal = []
    for st in target:
        for below, above in zip(st, st[1:]):
            nl.append(f"{above} should be on top of {below}.")
            lp.append(f"goal(on({above}, {below})).")
            goal.append(f"(on {above} {below})")
    if not goal:
        # A single-block goal tower still needs a goal atom.
        nl.append(f"{target[0][0]} should be on the table.")
        lp.append(f"goal(on_table({target[0][0]})).")
        goal.append(f"(on-table {target[0][0]})")
    return " ".join(nl), lp, pddl(name, "blocksworld", [(blocks, None)], init, goal)


def blocksworld_tasks(rng):
    for name, n in (("p01", 3), ("p02", 4), ("p03", 5)):
        yield blocksworld(name, rng, n)


# ---------------------------------------------------------------------------
# floortile

def floortile(name, rows, cols, robots, paint):
    """robots: [tile (r, c)]; paint: {(r, c): color}."""
    def tid(r, c):
        return f"tile_{r}_{c}"

    grid = "\n".join(" ".join(tid(r, c) for c in range(1, cols + 1))
                     for r in range(1, rows + 1))
    nl = [f"You have {rows} rows and {cols} columns of unpainted floor tiles. {grid}",
          f"You have {len(robots)} robots.",
          "Each robot can paint in color white or black."]
    nl += [f"robot{i} is at {tid(*t)}." for i, t in enumerate(robots, 1)]
    nl.append("Your goal is to paint the grid in the following pattern:")
    nl.append("; ".join(f"{tid(*t)} is {c}" for t, c in sorted(paint.items())) + ".")

    lp = [f"init(floortile_grid({r}, {c}, {tid(r, c)}))."
          for r in range(1, rows + 1) for c in range(1, cols + 1)]
    lp += [f"init(robot_at(robot{i}, {tid(*t)}))." for i, t in enumerate(robots, 1)]
    lp += ["init(available_color(white)).", "init(available_color(black))."]
    lp += [f"goal(painted({tid(*t)}, {c}))." for t, c in sorted(paint.items())]

    def gt(r, c):
        return f"tile_{r}-{c}"

    tiles = [gt(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
    colors = ["white", "black"]
    init = [f"(robot_at robot{i} {gt(*t)})" for i, t in enumerate(robots, 1)]
    init += [f"(robot_has robot{i} {colors[(i - 1) % 2]})"
             for i in range(1, len(robots) + 1)]
    init += ["(available_color white)", "(available_color black)"]
    occupied = set(robots)
    init += [f"(clear {gt(r, c)})" for r in range(1, rows + 1)
             for c in range(1, cols + 1) if (r, c) not in occupied]
    for r in range(2, rows + 1):
        for c in range(1, cols + 1):
            init.append(f"(up {gt(r, c)} {gt(r - 1, c)})")
            init.append(f"(down {gt(r - 1, c)} {gt(r, c)})")
    for r in range(1, rows + 1):
        for c in range(2, cols + 1):
            init.append(f"(right {gt(r, c)} {gt(r, c - 1)})")
            init.append(f"(left {gt(r, c - 1)} {gt(r, c)})")
    init.append("(= (total-cost) 0)")
    goal = [f"(painted {gt(*t)} {c})" for t, c in sorted(paint.items())]
    objects = [([f"robot{i}" for i in range(1, len(robots) + 1)], "robot"),
               (tiles, "tile"), (colors, "color")]
    return ("\n".join(nl), lp,
            pddl(name, "floortile", objects, init, goal, "minimize (total-cost)"))


def floortile_tasks(rng):
    for name, rows, cols in (("p01", 3, 3), ("p02", 4, 3), ("p03", 5, 3)):
        cells = [(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
        robots = rng.sample(cells, 2)
        # Checkerboard over every row but the first, as the IPC tasks do.
        paint = {(r, c): ("white" if (r + c) % 2 == 0 else "black")
                 for r in range(2, rows + 1) for c in range(1, cols + 1)}
        yield floortile(name, rows, cols, robots, paint)


# ---------------------------------------------------------------------------
# grippers

def grippers(name, rng, robots, rooms, balls):
    at_robot = [rng.randint(1, rooms) for _ in range(robots)]
    ball_from = [rng.randint(1, rooms) for _ in range(balls)]
    ball_to = [rng.randint(1, rooms) for _ in range(balls)]
    nl = [f"You control {robots} robots, each robot has a left gripper and a right gripper."
          if robots > 1 else
          "You control 1 robot, each robot has a left gripper and a right gripper."]
    nl.append(f"There are {rooms} rooms and {balls} balls.")
    nl += [f"robot{i} is in room{r}." for i, r in enumerate(at_robot, 1)]
    nl.append(" ".join(f"ball{i} is in room{r}." for i, r in enumerate(ball_from, 1)))
    nl.append("The robots' grippers are free.")
    nl.append("Your goal is to transport the balls to their destinations.")
    nl += [f"ball{i} should be in room{r}." for i, r in enumerate(ball_to, 1)]

    lp = [f"cardinality(robot, {robots}).", f"cardinality(left_gripper, {robots}).",
          f"cardinality(right_gripper, {robots}).", f"cardinality(room, {rooms}).",
          f"cardinality(ball, {balls}).",
          "init(map(robot, robot_left_gripper_map, left_gripper)).",
          "init(map(robot, robot_right_gripper_map, right_gripper)).",
          "init(free(X, Y)) :- robot_left_gripper_map(X, Y).",
          "init(free(X, Y)) :- robot_right_gripper_map(X, Y)."]
    lp += [f"init(at_robby(robot{i}, room{r}))." for i, r in enumerate(at_robot, 1)]
    lp += [f"init(at(ball{i}, room{r}))." for i, r in enumerate(ball_from, 1)]
    lp += [f"goal(at(ball{i}, room{r}))." for i, r in enumerate(ball_to, 1)]

    robot_ids = [f"robot{i}" for i in range(1, robots + 1)]
    grippers_ = [g for i in range(1, robots + 1) for g in (f"rgripper{i}", f"lgripper{i}")]
    objects = [(robot_ids, "robot"), (grippers_, "gripper"),
               ([f"room{i}" for i in range(1, rooms + 1)], "room"),
               ([f"ball{i}" for i in range(1, balls + 1)], "object")]
    init = [f"(at-robby robot{i} room{r})" for i, r in enumerate(at_robot, 1)]
    for i in range(1, robots + 1):
        init += [f"(free robot{i} rgripper{i})", f"(free robot{i} lgripper{i})"]
    init += [f"(at ball{i} room{r})" for i, r in enumerate(ball_from, 1)]
    goal = [f"(at ball{i} room{r})" for i, r in enumerate(ball_to, 1)]
    return "\n".join(nl), lp, pddl(name, "gripper-strips", objects, init, goal)


def grippers_tasks(rng):
    for name, robots, rooms, balls in (("p01", 1, 3, 3), ("p02", 2, 4, 4),
                                       ("p03", 2, 3, 5)):
        yield grippers(name, rng, robots, rooms, balls)


# ---------------------------------------------------------------------------
# storage

def storage(name, rng, rows, cols, hoists, crates):
    def area(r, c, hyphen):
        sep = "-" if hyphen else "_"
        return f"depot0{sep}{r}{sep}{c}"

    def carea(i, hyphen):
        sep = "-" if hyphen else "_"
        return f"container{sep}0{sep}{i}"

    cells = [(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
    hoist_at = rng.sample(cells, hoists)
    entry = rng.choice(cells)
    n_areas = rows * cols
    nl = [f"You have {n_areas} depot storeareas, {crates} container storeareas, "
          f"{hoists} hoists, {crates} crates, 1 container0, 1 depot0, 1 loadarea."]
    nl.append("Depot storeareas are: " + " ".join(area(r, c, True) for r, c in cells))
    nl.append("Container storeareas are: " +
              " ".join(carea(i, True) for i in range(crates)))
    nl.append("Here is a map of depot storeareas:\n")
    nl += [" ".join(area(r, c, True) for c in range(1, cols + 1))
           for r in range(1, rows + 1)]
    nl.append("\nAccording to the map, adjacent depot storeareas are connected.")
    nl.append("Config:")
    nl += [f"Depot storearea {area(r, c, True)} is in depot0." for r, c in cells]
    nl += [f"Container storearea {carea(i, True)} is in container0."
           for i in range(crates)]
    for i in range(crates):
        nl.append(f"crate{i} is on {carea(i, True)}.")
        nl.append(f"crate{i} is in container0.")
    for h, cell in enumerate(hoist_at):
        nl.append(f"hoist{h} is at {area(*cell, True)} and available.")
    nl += [f"{carea(i, True)} is connected to loadarea." for i in range(crates)]
    nl.append(f"loadarea is connected to {area(*entry, True)}.")
    nl += [f"{area(r, c, True)} is clear." for r, c in cells if (r, c) not in hoist_at]
    nl.append("Your goal is to move all crates to depot0.")

    lp = [f"object({area(r, c, False)}, depot_storearea)." for r, c in cells]
    lp += [f"object({carea(i, False)}, container_storearea)." for i in range(crates)]
    lp += [f"object(hoist{h}, hoist)." for h in range(hoists)]
    lp += [f"object(crate{i}, crate)." for i in range(crates)]
    lp += ["object(container0, container).", "object(depot0, depot).",
           "object(loadarea, transitarea)."]
    lp += [f"init(depot_storearea_grid({r}, {c}, {area(r, c, False)}))." for r, c in cells]
    lp.append("init(connected(X, Y)) :- adjacent(X, Y).")
    lp += [f"init(in({area(r, c, False)}, depot0))." for r, c in cells]
    lp += [f"init(in({carea(i, False)}, container0))." for i in range(crates)]
    for i in range(crates):
        lp.append(f"init(on(crate{i}, {carea(i, False)})).")
        lp.append(f"init(in(crate{i}, container0)).")
    for h, cell in enumerate(hoist_at):
        lp.append(f"init(at(hoist{h}, {area(*cell, False)})).")
        lp.append(f"init(available(hoist{h})).")
    lp += [f"init(connected({carea(i, False)}, loadarea))." for i in range(crates)]
    lp.append(f"init(connected(loadarea, {area(*entry, False)})).")
    lp += [f"init(clear({area(r, c, False)}))." for r, c in cells if (r, c) not in hoist_at]
    lp += [f"goal(in(crate{i}, depot0))." for i in range(crates)]

    objects = [([f"hoist{h}" for h in range(hoists)], "hoist"),
               ([f"crate{i}" for i in range(crates)], "crate"),
               (["container0"], "container"), (["depot0"], "depot"),
               ([area(r, c, True) for r, c in cells] +
                [carea(i, True) for i in range(crates)], "storearea"),
               (["loadarea"], "transitarea")]
    init = []
    for r, c in cells:
        for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            if (r + dr, c + dc) in cells:
                init.append(f"(connected {area(r, c, True)} {area(r + dr, c + dc, True)})")
    init += [f"(in {area(r, c, True)} depot0)" for r, c in cells]
    init += [f"(clear {area(r, c, True)})" for r, c in cells if (r, c) not in hoist_at]
    for i in range(crates):
        init += [f"(on crate{i} {carea(i, True)})", f"(in crate{i} container0)",
                 f"(in {carea(i, True)} container0)",
                 f"(connected loadarea {carea(i, True)})",
                 f"(connected {carea(i, True)} loadarea)"]
    init += [f"(connected loadarea {area(*entry, True)})",
             f"(connected {area(*entry, True)} loadarea)"]
    for h, cell in enumerate(hoist_at):
        init += [f"(at hoist{h} {area(*cell, True)})", f"(available hoist{h})"]
    goal = [f"(in crate{i} depot0)" for i in range(crates)]
    return "\n".join(nl), lp, pddl(name, "storage-propositional", objects, init, goal)


def storage_tasks(rng):
    for name, rows, cols, hoists, crates in (("p01", 1, 2, 1, 1), ("p02", 2, 2, 1, 2),
                                             ("p03", 2, 3, 2, 2)):
        yield storage(name, rng, rows, cols, hoists, crates)


# ---------------------------------------------------------------------------
# termes

def termes(name, rows, cols, robot, depot, max_height, targets):
    def pos(r, c, hyphen):
        sep = "-" if hyphen else "_"
        return f"pos{sep}{r}{sep}{c}"

    cells = [(r, c) for r in range(rows) for c in range(cols)]
    nl = [f"The robot is on a grid with {rows} rows and {cols} columns."]
    nl += [" ".join(pos(r, c, True) for c in range(cols)) for r in range(rows)]
    nl.append(f"The robot is at {pos(*robot, True)}.")
    nl.append(f"The depot for new blocks is at {pos(*depot, True)}.")
    nl.append(f"The maximum height of blocks is {max_height}.")
    nl.append("Your goal is to build blocks so that " +
              " and ".join(f"the height at {pos(*t, True)} is {h}"
                           for t, h in sorted(targets.items())) + ".")
    nl.append("You cannot have an unplaced block at the end.")

    lp = [f"init(termes_pos_grid({r}, {c}, {pos(r, c, False)}))." for r, c in cells]
    lp += [f"init(at({pos(*robot, False)})).", f"init(is_depot({pos(*depot, False)})).",
           f"init(max_height({max_height}))."]
    lp += [f"goal(height({pos(*t, False)}, n{h}))." for t, h in sorted(targets.items())]

    numbs = [f"n{i}" for i in range(max_height + 1)]
    objects = [(numbs, "numb"), ([pos(r, c, True) for r, c in cells], "position")]
    init = [f"(height {pos(r, c, True)} n0)" for r, c in cells]
    init.append(f"(at {pos(*robot, True)})")
    for r, c in cells:
        for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            if (r + dr, c + dc) in cells:
                init.append(f"(neighbor {pos(r, c, True)} {pos(r + dr, c + dc, True)})")
    init.append(f"(is-depot {pos(*depot, True)})")
    init += [f"(succ n{i} n{i + 1})" for i in range(max_height)]
    goal = [f"(height {pos(r, c, True)} n{targets.get((r, c), 0)})" for r, c in cells]
    return "\n".join(nl), lp, pddl(name, "termes", objects, init, goal)


def termes_tasks(rng):
    for name, rows, cols, hmax in (("p01", 3, 3, 2), ("p02", 3, 4, 3), ("p03", 4, 3, 3)):
        cells = [(r, c) for r in range(rows) for c in range(cols)]
        depot = rng.choice(cells)
        targets = {t: rng.randint(1, hmax) for t in rng.sample(
            [x for x in cells if x != depot], 2)}
        yield termes(name, rows, cols, depot, depot, hmax, targets)


# ---------------------------------------------------------------------------
# tyreworld

def tyreworld(name, n):
    nl = [f"You have a jack, a pump, a wrench, a boot, {n} hubs, {n} nuts, "
          f"{n} flat tyres, and {n} intact tyres."]
    nl += ["The jack, pump, wrench, and intact tyres are in the boot.",
           "The boot is unlocked but is closed.",
           "The intact tyres are not inflated.",
           "The flat tyres are on the hubs.",
           "The hubs are on the ground.",
           "The nuts are tight on the hubs.",
           "The hubs are fastened.",
           "Your goal is to replace flat tyres with intact tyres on the hubs. "
           "Intact tyres should be inflated. The nuts should be tight on the hubs. "
           "The flat tyres, wrench, jack, and pump should be in the boot. "
           "The boot should be closed."]
    example = (PACKS / "tyreworld" / "example.lp").read_text().splitlines()
    lp = [f"cardinality({t}, {n})." for t in ("hub", "nut", "flat_tyre", "intact_tyre")]
    lp += [l for l in example if not l.startswith("cardinality(")]

    r = [f"r{i}" for i in range(1, n + 1)]
    w = [f"w{i}" for i in range(1, n + 1)]
    hubs = [f"the-hub{i}" for i in range(1, n + 1)]
    nuts = [f"nut{i}" for i in range(1, n + 1)]
    objects = [(["wrench", "jack", "pump"], "tool"), (r + w, "wheel"),
               (nuts, "nut"), (["boot"], "container"), (hubs, "hub")]
    init = ["(in jack boot)", "(in pump boot)", "(in wrench boot)",
            "(unlocked boot)", "(closed boot)"]
    for i in range(n):
        init += [f"(intact {r[i]})", f"(in {r[i]} boot)", f"(on {w[i]} {hubs[i]})",
                 f"(on-ground {hubs[i]})", f"(tight {nuts[i]} {hubs[i]})",
                 f"(fastened {hubs[i]})"]
    goal = []
    for i in range(n):
        goal += [f"(on {r[i]} {hubs[i]})", f"(inflated {r[i]})",
                 f"(tight {nuts[i]} {hubs[i]})", f"(in {w[i]} boot)"]
    goal += ["(in wrench boot)", "(in jack boot)", "(in pump boot)", "(closed boot)"]
    return " ".join(nl[:1]) + "\n" + "\n".join(nl[1:]), lp, pddl(
        name, "tyreworld", objects, init, goal)


def tyreworld_tasks(rng):
    for name, n in (("p01", 1), ("p02", 2), ("p03", 3)):
        yield tyreworld(name, n)


GENERATORS = {
    "barman": barman_tasks,
    "blocksworld": blocksworld_tasks,
    "floortile": floortile_tasks,
    "grippers": grippers_tasks,
    "storage": storage_tasks,
    "termes": termes_tasks,
    "tyreworld": tyreworld_tasks,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "data" / "dataset")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    for domain, gen in GENERATORS.items():
        rng = random.Random(f"{args.seed}:{domain}")
        ddir = args.out / domain
        if ddir.exists():
            shutil.rmtree(ddir)
        (ddir / "tasks").mkdir(parents=True)
        for f in ("domain.pddl", "meta.json", "example.nl", "example.lp"):
            shutil.copyfile(PACKS / domain / f, ddir / f)
        for name, (nl, lp, gt) in zip(
                (f"p{i:02d}" for i in range(1, 100)),
                ((t[0], t[1], t[2]) for t in gen(rng))):
            (ddir / "tasks" / f"{name}.nl").write_text(nl + "\n")
            (ddir / "tasks" / f"{name}.golden.lp").write_text("\n".join(lp) + "\n")
            (ddir / "tasks" / f"{name}.pddl").write_text(gt)
        print(f"{domain}: {len(list((ddir / 'tasks').glob('*.nl')))} tasks")


if __name__ == "__main__":
    main()
