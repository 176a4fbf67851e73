"""Discrete clock semantics shared by both engines.

Valuations are plain tuples of ints indexed by clock, which keeps them
hashable and every operation linear in the number of clocks.
"""

from __future__ import annotations

from typing import NamedTuple

from .model import Edge, TimedAutomaton

Valuation = tuple  # tuple[int, ...]


class Configuration(NamedTuple):
    location: int
    valuation: Valuation


def zero(nclocks: int) -> Valuation:
    return (0,) * nclocks


def delay(v: Valuation, d: int) -> Valuation:
    return tuple(x + d for x in v)


def bounded_add(v: Valuation, d: int, mc: int) -> Valuation:
    """Pointwise addition saturating at ``mc + 1``.

    Entries above ``mc + 1`` never arise in the bounded semantics and are
    rejected.
    """
    cap = mc + 1
    out = []
    for x in v:
        if x > cap:
            raise ValueError(f"valuation entry {x} exceeds MC+1 = {cap}")
        s = x + d
        out.append(cap if s > mc else s)
    return tuple(out)


def reset(v: Valuation, clocks) -> Valuation:
    if not clocks:
        return v
    return tuple(0 if i in clocks else x for i, x in enumerate(v))


def satisfies(v: Valuation, guard) -> bool:
    for x, iv in zip(v, guard):
        if x < iv.lower or x > iv.upper:
            return False
    return True


def mc_equivalent(v: Valuation, w: Valuation, mc: int) -> bool:
    """True when every clock agrees or is above ``mc`` in both valuations."""
    return all(a == b or (a > mc and b > mc) for a, b in zip(v, w))


def switch_successors(conf: Configuration, model: TimedAutomaton) -> list[tuple[Edge, Configuration]]:
    """Enabled edges from ``conf`` with their targets, in edge-ordinal order."""
    loc, v = conf
    return [
        (e, Configuration(e.target, reset(v, e.reset)))
        for e in model.outgoing[loc]
        if satisfies(v, e.guard)
    ]
