"""Explicit-state reachability over the bounded discrete semantics.

Every configuration is stored individually; a configuration's time
successors are enumerated one unit at a time.  Besides being a baseline
engine this is the reference the time-dart engine is checked against.
"""

from __future__ import annotations

import math
from collections import deque

from .model import TimedAutomaton, max_constant, validate
from .search import DEFAULT_LIMITS, Budget, Limits, ReachResult, ResourceLimit, SearchOrder
from .semantics import Configuration, bounded_add, reset, satisfies, zero


def resolve_location(model: TimedAutomaton, goal) -> int | None:
    if goal is None or isinstance(goal, int):
        if goal is not None and not 0 <= goal < len(model.locations):
            raise KeyError(f"unknown location {goal}")
        return goal
    return model.location_index(goal)


class _GoalFound(Exception):
    pass


def _search(model, goal, order, limits):
    validate(model)
    goal = resolve_location(model, goal)
    order = SearchOrder(order)
    mc = max_constant(model)
    outgoing = model.outgoing
    budget = Budget(limits)
    result = ReachResult(reachable=False)
    seen = set()  # Passed and Waiting together
    waiting = deque()

    def add_to_pw(loc, v):
        result.discovered += 1
        conf = (loc, v)
        if conf not in seen:
            if loc == goal:
                raise _GoalFound
            seen.add(conf)
            waiting.append(conf)

    pop = waiting.popleft if order is SearchOrder.FIFO else waiting.pop
    try:
        add_to_pw(model.initial, zero(len(model.clocks)))
        while waiting:
            budget.check(result, len(seen), check_clock=(result.iterations & 255) == 0)
            loc, v = pop()
            result.iterations += 1
            for e in outgoing[loc]:
                if satisfies(v, e.guard):
                    add_to_pw(e.target, reset(v, e.reset))
            add_to_pw(loc, bounded_add(v, 1, mc))
    except _GoalFound:
        result.reachable = True
    result.stored = len(seen)
    result.elapsed = budget.elapsed()
    return result, seen


def reach_naive(model: TimedAutomaton, goal, order=SearchOrder.FIFO, limits: Limits = DEFAULT_LIMITS) -> ReachResult:
    """Decide whether location ``goal`` (name or index) is reachable.

    With ``goal=None`` the whole state space is explored and the verdict is
    False.  Raises ResourceLimit when ``limits`` are exceeded.
    """
    return _search(model, goal, order, limits)[0]


def reachable_configurations(model: TimedAutomaton, limits: Limits = DEFAULT_LIMITS) -> set[Configuration]:
    """All configurations reachable in the bounded semantics."""
    _, seen = _search(model, None, SearchOrder.FIFO, limits)
    return {Configuration(*c) for c in seen}


def min_goal_delay(model: TimedAutomaton, goal, limits: Limits = DEFAULT_LIMITS):
    """Least total delay of any run reaching ``goal``, or ``math.inf``.

    0-1 breadth-first search: switches cost nothing, a one-unit delay costs 1.
    """
    validate(model)
    goal = resolve_location(model, goal)
    mc = max_constant(model)
    budget = Budget(limits)
    start = (model.initial, zero(len(model.clocks)))
    dist = {start: 0}
    queue = deque([start])
    done = set()
    steps = 0
    while queue:
        budget.check(ReachResult(False, iterations=steps), len(dist), check_clock=(steps & 255) == 0)
        steps += 1
        conf = queue.popleft()
        if conf in done:
            continue
        done.add(conf)
        loc, v = conf
        d = dist[conf]
        if loc == goal:
            return d
        for e in model.outgoing[loc]:
            if satisfies(v, e.guard):
                nxt = (e.target, reset(v, e.reset))
                if dist.get(nxt, math.inf) > d:
                    dist[nxt] = d
                    queue.appendleft(nxt)
        nxt = (loc, bounded_add(v, 1, mc))
        if dist.get(nxt, math.inf) > d + 1:
            dist[nxt] = d + 1
            queue.append(nxt)
    return math.inf


__all__ = [
    "reach_naive",
    "reachable_configurations",
    "min_goal_delay",
    "resolve_location",
    "ResourceLimit",
    "SearchOrder",
]
