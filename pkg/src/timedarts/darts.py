"""Time-dart reachability.

A time-dart ``(anchor, w, p)`` stands for the diagonal ray of valuations
``anchor + d``: offsets ``w <= d < p`` are still waiting to be explored,
offsets ``d >= p`` are already passed.  The passed-waiting list maps
``(location, anchor)`` to ``(w, p)``; new information is merged by taking
componentwise minima, so one entry absorbs every dart that shares its
anchor.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, NamedTuple

from .model import INF, TimedAutomaton, max_constant, validate
from .naive import resolve_location
from .search import DEFAULT_LIMITS, Budget, Limits, ReachResult, SearchOrder
from .semantics import bounded_add, reset


class InvariantViolation(AssertionError):
    pass


class TimeDart(NamedTuple):
    anchor: tuple
    w: int
    p: int | float


class SuccessorWindow(NamedTuple):
    start: int
    end: int | float
    stop: int | float = INF


def waiting_points(dart: TimeDart, cutoff: int) -> list[tuple]:
    """Waiting valuations of ``dart``, offsets truncated below ``cutoff``."""
    hi = min(dart.p, cutoff)
    return [tuple(x + d for x in dart.anchor) for d in range(dart.w, int(hi))] if dart.w < hi else []


def passed_points(dart: TimeDart, cutoff: int) -> list[tuple]:
    if dart.p == INF or dart.p >= cutoff:
        return []
    return [tuple(x + d for x in dart.anchor) for d in range(int(dart.p), cutoff)]


def successor_window(anchor, w, guard) -> SuccessorWindow:
    """Delays from ``anchor`` bracketing the guard: first enabled, last enabled.

    ``start`` never goes below ``w``.  ``end`` is ``inf`` when no clock is
    bounded above.
    """
    start = w
    end = INF
    for a, iv in zip(anchor, guard):
        lo = iv.lower - a
        if lo > start:
            start = lo
        hi = iv.upper - a
        if hi < end:
            end = hi
    return SuccessorWindow(start, end)


class PassedWaitingList:
    """Hash map ``(location, anchor) -> (w, p)`` plus a queue of dirty keys.

    A key sits in the queue at most once at a time.  Keys whose entry stops
    being dirty (``w == p``) before they are popped are skipped as stale.
    """

    def __init__(self):
        self.entries: dict[tuple[int, tuple], tuple[int, int | float]] = {}
        self.dirty: deque = deque()
        self.queued: set = set()

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def get(self, key):
        return self.entries.get(key)

    def merge(self, key, w, p):
        """Min-merge ``(w, p)`` into ``key``; return the previous value (or None)."""
        old = self.entries.get(key)
        if old is None:
            new = (w, p)
        else:
            new = (min(w, old[0]), min(p, old[1]))
        self.entries[key] = new
        if new[0] < new[1] and key not in self.queued:
            self.queued.add(key)
            self.dirty.append(key)
        return old

    def pop(self, order: SearchOrder):
        """Next key with waiting points, or None when nothing is left."""
        while self.dirty:
            key = self.dirty.popleft() if order is SearchOrder.FIFO else self.dirty.pop()
            self.queued.discard(key)
            w, p = self.entries[key]
            if w < p:
                return key
        return None

    def snapshot(self) -> dict:
        return dict(self.entries)


def format_pw(model: TimedAutomaton, entries: dict) -> str:
    def num(x):
        return "inf" if x == INF else str(x)

    def anchor(a):
        return "(" + ",".join(map(str, a)) + ")"

    parts = [
        f"{model.locations[loc]},{anchor(a)}:({num(w)},{num(p)})"
        for (loc, a), (w, p) in sorted(entries.items())
    ]
    return "{" + "; ".join(parts) + "}"


class DartSearch:
    """One run of the time-dart algorithm.

    The run's state stays inspectable after ``run()``: ``pw`` is the final
    passed-waiting list and ``picked`` lists the keys explored, in order.

    ``check`` turns on the invariant assertions (raising InvariantViolation).
    ``on_store`` is called as ``on_store(location, anchor, w, p)`` after every
    mutation of the list.  ``trace`` receives one formatted line per iteration.
    """

    def __init__(
        self,
        model: TimedAutomaton,
        goal,
        order=SearchOrder.FIFO,
        limits: Limits = DEFAULT_LIMITS,
        check: bool = False,
        on_store: Callable | None = None,
        trace: Callable[[str], None] | None = None,
    ):
        self.model = validate(model)
        self.goal = resolve_location(model, goal)
        self.order = SearchOrder(order)
        self.limits = limits
        self.mc = max_constant(model)
        self.check = check
        self.on_store = on_store
        self.trace = trace
        self.pw = PassedWaitingList()
        self.picked: list[tuple[int, tuple]] = []
        self.result = ReachResult(reachable=False)

    # -- invariants ---------------------------------------------------------

    def _check_anchor(self, anchor):
        if 0 not in anchor:
            raise InvariantViolation(f"anchor {anchor} has no zero clock")
        if max(anchor) > self.mc + 1:
            raise InvariantViolation(f"anchor {anchor} exceeds MC+1 = {self.mc + 1}")

    def _check_entry(self, key, old):
        w, p = self.pw.entries[key]
        mc = self.mc
        if not (0 <= w <= mc and w <= p and (p <= mc or p == INF)):
            raise InvariantViolation(f"entry {key} -> {(w, p)} breaks 0<=w<=MC, w<=p, p<=MC or inf (MC={mc})")
        if old is not None and (w > old[0] or p > old[1]):
            raise InvariantViolation(f"entry {key} grew from {old} to {(w, p)}")

    # -- algorithm ----------------------------------------------------------

    def add_to_pw(self, loc, anchor, w, p) -> bool:
        """Return True when ``loc`` is the goal (nothing is stored then)."""
        self.result.discovered += 1
        if self.check:
            self._check_anchor(anchor)
            if w > p:
                raise InvariantViolation(f"incoming dart {(anchor, w, p)} has w > p")
        if loc == self.goal:
            return True
        key = (loc, anchor)
        old = self.pw.merge(key, w, p)
        if self.check:
            self._check_entry(key, old)
        if self.on_store is not None:
            self.on_store(loc, anchor, *self.pw.entries[key])
        return False

    def successors(self, loc, anchor, w, p):
        """Yield the ``(target, anchor, w, p)`` darts generated from one dart."""
        mc = self.mc
        for e in self.model.outgoing[loc]:
            start, end, _ = successor_window(anchor, w, e.guard)
            if self.check and start > mc:
                raise InvariantViolation(f"window start {start} exceeds MC = {mc}")
            if not (start < p and start <= end):
                continue
            if not e.reset:
                shifted = tuple(x - start for x in bounded_add(anchor, start, mc))
                yield e.target, shifted, start, INF
                continue
            kept = [a for i, a in enumerate(anchor) if i not in e.reset]
            stop = max(start, mc + 1 - min(kept)) if kept else start
            last = min(end, p - 1, stop)
            for n in range(start, int(last) + 1):
                yield e.target, reset(bounded_add(anchor, n, mc), e.reset), 0, INF

    def explore(self, key) -> bool:
        """Explore the waiting part of ``key``'s dart; True if the goal was hit."""
        loc, anchor = key
        w, p = self.pw.entries[key]
        self.pw.entries[key] = (w, w)
        if self.on_store is not None:
            self.on_store(loc, anchor, w, w)
        for succ in self.successors(loc, anchor, w, p):
            if self.add_to_pw(*succ):
                return True
        return False

    def run(self) -> ReachResult:
        budget = Budget(self.limits)
        res = self.result
        pw = self.pw
        try:
            if self.add_to_pw(self.model.initial, (0,) * len(self.model.clocks), 0, INF):
                res.reachable = True
                return res
            while True:
                budget.check(res, len(pw), check_clock=(res.iterations & 63) == 0)
                key = pw.pop(self.order)
                if key is None:
                    return res
                res.iterations += 1
                self.picked.append(key)
                hit = self.explore(key)
                if self.trace is not None:
                    self.trace(self._trace_line(key))
                if hit:
                    res.reachable = True
                    return res
        finally:
            res.stored = len(pw)
            res.elapsed = budget.elapsed()

    def _trace_line(self, key):
        loc, anchor = key
        return (
            f"iter={self.result.iterations} "
            f"picked={self.model.locations[loc]},({','.join(map(str, anchor))}) "
            f"pw={format_pw(self.model, self.pw.entries)}"
        )


def reach_darts(model: TimedAutomaton, goal, order=SearchOrder.FIFO, limits: Limits = DEFAULT_LIMITS, **kwargs) -> ReachResult:
    """Decide reachability of ``goal`` with the time-dart engine.

    Extra keyword arguments (``check``, ``on_store``, ``trace``) are passed
    to DartSearch.
    """
    return DartSearch(model, goal, order, limits, **kwargs).run()


def explore_dart(model, mc, loc, anchor, w, p, goal=None) -> list[tuple[int, TimeDart]]:
    """The ``(target, dart)`` pairs one exploration of ``(loc, anchor, w, p)`` adds.

    Pure helper: does not touch any passed-waiting list and ignores ``goal``
    short-circuiting, so it lists every generated dart.
    """
    search = DartSearch(model, goal)
    search.mc = mc
    return [(t, TimeDart(a, sw, sp)) for t, a, sw, sp in search.successors(loc, anchor, w, p)]


__all__ = [
    "DartSearch",
    "InvariantViolation",
    "PassedWaitingList",
    "SuccessorWindow",
    "TimeDart",
    "explore_dart",
    "format_pw",
    "passed_points",
    "reach_darts",
    "successor_window",
    "waiting_points",
]
