"""Deterministic model generators for tests and benchmarks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .model import INF, Interval, TimedAutomaton, build_model


def gen_fig4() -> TimedAutomaton:
    """Four locations, two clocks; l3 is unreachable."""
    return build_model(
        ["x", "y"],
        ["l0", "l1", "l2", "l3"],
        "l0",
        [
            ("l0", "l1", {"x": Interval(2, INF)}, []),
            ("l1", "l1", {}, ["x"]),
            ("l1", "l2", {"x": Interval(2, INF), "y": Interval(2, INF)}, ["x", "y"]),
            ("l2", "l1", {"x": Interval(1, INF)}, []),
            ("l2", "l3", {"x": Interval(0, 1), "y": Interval(2, INF)}, []),
        ],
    )


def gen_lcm(n: int, bound=INF) -> TimedAutomaton:
    """Clocks x1..xn and y; Goal needs every xi back at 0 with 1 <= y <= bound.

    Self-loop i fires exactly at xi == i and resets xi, so all xi are zero
    together first at t = lcm(1..n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    xs = [f"x{i}" for i in range(1, n + 1)]
    edges = [("Loop", "Loop", {x: Interval(i, i)}, [x]) for i, x in enumerate(xs, 1)]
    goal_guard = {x: Interval(0, 0) for x in xs}
    goal_guard["y"] = Interval(1, bound)
    edges.append(("Loop", "Goal", goal_guard, []))
    return build_model(xs + ["y"], ["Loop", "Goal"], "Loop", edges)


# Fischer process states: idle, requesting, waiting, critical.
_FISCHER_STATES = ("A", "B", "C", "CS")


def gen_fischer(k: int) -> TimedAutomaton:
    """Two Fischer processes flattened into one automaton, scaled by ``k``.

    Locations are ``<s1>.<s2>.id<n>`` with the shared lock variable folded
    in; every product location with both processes critical collapses into
    ``violation``.  Process i:

    - A -> B when id == 0, resets xi
    - B -> C when xi <= k - 1, sets id := i, resets xi
    - C -> CS when id == i and xi >= k
    - C -> A when id != i
    - CS -> A, sets id := 0

    The write window is closed one unit below the read delay: with
    ``xi <= k`` on the write the discrete interleaving can write and read
    in the same instant and both processes enter the critical section.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    clocks = ["x1", "x2"]

    def name(s, id_):
        if s[0] == "CS" and s[1] == "CS":
            return "violation"
        return f"{s[0]}.{s[1]}.id{id_}"

    def moves(i, s, id_):
        x = clocks[i - 1]
        if s == "A" and id_ == 0:
            yield "B", id_, {}, [x]
        elif s == "B":
            yield "C", i, {x: Interval(0, k - 1)}, [x]
        elif s == "C":
            if id_ == i:
                yield "CS", id_, {x: Interval(k, INF)}, []
            else:
                yield "A", id_, {}, []
        elif s == "CS":
            yield "A", 0, {}, []

    # Only locations reachable in the untimed product are emitted.
    start = (("A", "A"), 0)
    order = [start]
    seen = {start}
    edges = []
    for states, id_ in order:
        if name(states, id_) == "violation":
            continue
        for i in (1, 2):
            for nxt, nid, guard, reset in moves(i, states[i - 1], id_):
                ns = (nxt, states[1]) if i == 1 else (states[0], nxt)
                edges.append((name(states, id_), name(ns, nid), guard, reset))
                if (ns, nid) not in seen:
                    seen.add((ns, nid))
                    order.append((ns, nid))
    locations = []
    for states, id_ in order:
        n = name(states, id_)
        if n not in locations:
            locations.append(n)
    if "violation" not in locations:
        locations.append("violation")
    return build_model(clocks, locations, name(*start), edges)


@dataclass(frozen=True)
class RandomModelParams:
    clocks: int = 2
    locations: int = 4
    edges: int = 6
    max_bound: int = 4
    reset_prob: float = 0.3
    guard_density: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.clocks <= 4:
            raise ValueError("clocks must be in 1..4")
        if not 2 <= self.locations <= 8:
            raise ValueError("locations must be in 2..8")
        if self.edges < 0:
            raise ValueError("edges must be nonnegative")
        if not 0 <= self.max_bound <= 6:
            raise ValueError("max_bound must be in 0..6")
        for f in ("reset_prob", "guard_density"):
            if not 0 <= getattr(self, f) <= 1:
                raise ValueError(f"{f} must be in [0, 1]")


def _random_model(params: RandomModelParams, rng: random.Random) -> TimedAutomaton:
    clocks = [f"c{i}" for i in range(params.clocks)]
    locations = [f"l{i}" for i in range(params.locations)]
    edges = []
    for _ in range(params.edges):
        src = rng.choice(locations)
        dst = rng.choice(locations)
        guard = {}
        for c in clocks:
            if rng.random() < params.guard_density:
                guard[c] = _random_interval(rng, params.max_bound)
        if params.guard_density > 0 and not guard:
            guard[rng.choice(clocks)] = _random_interval(rng, params.max_bound)
        reset = [c for c in clocks if rng.random() < params.reset_prob]
        edges.append((src, dst, guard, reset))
    return build_model(clocks, locations, locations[0], edges)


def _random_interval(rng, max_bound):
    lo = rng.randint(0, max_bound)
    if rng.random() < 0.5:
        return Interval(lo, INF)
    return Interval(lo, rng.randint(lo, max_bound))


def gen_random(params: RandomModelParams) -> TimedAutomaton:
    """A model determined entirely by ``params`` (including the seed)."""
    return _random_model(params, random.Random(params.seed))


def gen_random_instance(params: RandomModelParams) -> tuple[TimedAutomaton, str]:
    """``gen_random(params)`` plus a goal drawn from the non-initial locations.

    The goal is drawn from the same random stream, after the model.
    """
    rng = random.Random(params.seed)
    model = _random_model(params, rng)
    goal = rng.choice(model.locations[1:])
    return model, goal


def random_suite(count: int, seed: int = 0, max_clocks: int = 3, max_locations: int = 6, max_bound: int = 4):
    """``count`` seeded (model, goal) pairs with parameters varied per instance."""
    meta = random.Random(seed)
    for n in itertools.count():
        if n == count:
            return
        params = RandomModelParams(
            clocks=meta.randint(1, max_clocks),
            locations=meta.randint(2, max_locations),
            edges=meta.randint(0, 2 * max_locations),
            max_bound=meta.randint(0, max_bound),
            reset_prob=meta.choice([0.0, 0.2, 0.4, 0.7]),
            guard_density=meta.choice([0.0, 0.3, 0.6, 1.0]),
            seed=meta.getrandbits(64),
        )
        yield (params, *gen_random_instance(params))
