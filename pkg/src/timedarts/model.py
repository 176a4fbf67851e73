"""Closed timed automata: model types, validation and the JSON model format.

Locations and clocks are addressed by dense index; their names only matter
for I/O.  Guards are stored total, one closed interval per clock, with
``math.inf`` standing for an unbounded upper end.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

INF = math.inf


class ParseError(ValueError):
    """Malformed model document."""

    def __init__(self, reason, line=None, column=None, path=None):
        self.reason = reason
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{reason} ({'; '.join(where)})" if where else reason)


class ValidationError(ValueError):
    """A model violates one or more structural invariants.

    ``violations`` holds one human-readable message per problem found.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid model: " + "; ".join(self.violations))


@dataclass(frozen=True)
class Interval:
    lower: int = 0
    upper: int | float = INF

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper

    @property
    def bounded(self) -> bool:
        return self.upper != INF

    def __str__(self):
        hi = "inf)" if self.upper == INF else f"{self.upper}]"
        return f"[{self.lower},{hi}"


TRUE_INTERVAL = Interval(0, INF)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    guard: tuple[Interval, ...]
    reset: frozenset[int]
    ordinal: int


@dataclass(frozen=True)
class TimedAutomaton:
    locations: tuple[str, ...]
    clocks: tuple[str, ...]
    edges: tuple[Edge, ...]
    initial: int = 0

    def location_index(self, name: str) -> int:
        try:
            return self.locations.index(name)
        except ValueError:
            raise KeyError(f"unknown location {name!r}") from None

    def clock_index(self, name: str) -> int:
        try:
            return self.clocks.index(name)
        except ValueError:
            raise KeyError(f"unknown clock {name!r}") from None

    @cached_property
    def outgoing(self) -> tuple[tuple[Edge, ...], ...]:
        """Edges grouped by source location, each group in ordinal order."""
        groups: list[list[Edge]] = [[] for _ in self.locations]
        for e in sorted(self.edges, key=lambda e: e.ordinal):
            groups[e.source].append(e)
        return tuple(tuple(g) for g in groups)


def normalize_guard(partial: Mapping[str, Interval], clocks: Sequence[str]) -> tuple[Interval, ...]:
    """Expand a sparse clock -> interval map into a total guard over ``clocks``.

    Clocks missing from ``partial`` get ``[0, inf)``.
    """
    unknown = set(partial) - set(clocks)
    if unknown:
        raise KeyError(f"guard mentions unknown clocks {sorted(unknown)}")
    return tuple(partial.get(c, TRUE_INTERVAL) for c in clocks)


def max_constant(model: TimedAutomaton) -> int:
    """Largest finite integer appearing in any guard (0 if there is none)."""
    mc = 0
    for e in model.edges:
        for iv in e.guard:
            mc = max(mc, iv.lower)
            if iv.upper != INF:
                mc = max(mc, iv.upper)
    return mc


def _check_interval(iv, where, problems):
    if not isinstance(iv, Interval):
        problems.append(f"{where}: not an interval")
        return
    if isinstance(iv.lower, bool) or not isinstance(iv.lower, int) or iv.lower < 0:
        problems.append(f"{where}: lower bound must be a natural number")
        return
    if iv.upper != INF and (isinstance(iv.upper, bool) or not isinstance(iv.upper, int) or iv.upper < 0):
        problems.append(f"{where}: upper bound must be a natural number or infinity")
        return
    if iv.lower > iv.upper:
        problems.append(f"{where}: interval lower > upper ({iv.lower} > {iv.upper})")


def validate(model: TimedAutomaton) -> TimedAutomaton:
    """Return ``model`` unchanged if it is well formed, else raise ValidationError."""
    problems = []
    nloc, nclk = len(model.locations), len(model.clocks)
    if nloc == 0:
        problems.append("model has no locations")
    if nclk == 0:
        problems.append("model has no clocks")
    for kind, names in (("location", model.locations), ("clock", model.clocks)):
        seen = set()
        for n in names:
            if not isinstance(n, str) or not n:
                problems.append(f"{kind} names must be nonempty strings, got {n!r}")
            elif n in seen:
                problems.append(f"duplicate {kind} name {n!r}")
            seen.add(n)
    if not 0 <= model.initial < nloc:
        problems.append(f"initial location {model.initial} does not exist")

    ordinals = sorted(e.ordinal for e in model.edges)
    if ordinals != list(range(len(model.edges))):
        problems.append("edge ordinals must be dense 0..n-1")
    for e in model.edges:
        tag = f"edge {e.ordinal}"
        for end in (e.source, e.target):
            if not 0 <= end < nloc:
                problems.append(f"{tag}: dangling location {end}")
        if len(e.guard) != nclk:
            problems.append(f"{tag}: guard is not total ({len(e.guard)} intervals for {nclk} clocks)")
        for i, iv in enumerate(e.guard):
            name = model.clocks[i] if i < nclk else f"#{i}"
            _check_interval(iv, f"{tag}, clock {name}", problems)
        for c in e.reset:
            if not 0 <= c < nclk:
                problems.append(f"{tag}: reset of unknown clock {c}")
    if problems:
        raise ValidationError(problems)
    return model


def build_model(clocks, locations, initial, edges) -> TimedAutomaton:
    """Construct and validate a model from names.

    ``edges`` is a sequence of ``(source, target, guard, reset)`` where source
    and target are location names, ``guard`` maps clock names to
    ``Interval`` (missing clocks are unconstrained) and ``reset`` is an
    iterable of clock names.
    """
    clocks = tuple(clocks)
    locations = tuple(locations)
    loc_ix = {n: i for i, n in enumerate(locations)}
    clk_ix = {n: i for i, n in enumerate(clocks)}
    problems = []
    built = []
    for k, (src, dst, guard, reset) in enumerate(edges):
        ends = []
        for name in (src, dst):
            if name not in loc_ix:
                problems.append(f"edge {k}: dangling location {name!r}")
            ends.append(loc_ix.get(name, -1))
        guard = dict(guard or {})
        for c in [c for c in guard if c not in clk_ix]:
            problems.append(f"edge {k}: guard on unknown clock {c!r}")
            del guard[c]
        bad_resets = [c for c in (reset or ()) if c not in clk_ix]
        for c in bad_resets:
            problems.append(f"edge {k}: reset of unknown clock {c!r}")
        r = frozenset(clk_ix[c] for c in (reset or ()) if c in clk_ix)
        built.append(Edge(ends[0], ends[1], normalize_guard(guard, clocks), r, k))
    if initial not in loc_ix:
        problems.append(f"initial location {initial!r} does not exist")
    model = TimedAutomaton(locations, clocks, tuple(built), loc_ix.get(initial, 0))
    try:
        validate(model)
    except ValidationError as exc:
        problems.extend(p for p in exc.violations if p not in problems)
    if problems:
        raise ValidationError(problems)
    return model


_TOP_KEYS = {"clocks", "locations", "initial", "edges"}
_EDGE_KEYS = {"from", "to", "guard", "reset"}


def _nat(value, path):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"expected a nonnegative integer, got {value!r}", path=path)
    return value


def _names(value, path):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError("expected an array of strings", path=path)
    return value


def load_model(data: bytes | str) -> TimedAutomaton:
    """Parse a JSON model document.

    Raises ParseError for malformed JSON or schema violations and
    ValidationError when the document is well formed but the model is not.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc.reason}", path=f"byte {exc.start}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None

    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", path="$")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise ParseError(f"unknown fields {sorted(extra)}", path="$")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}", path="$")
    clocks = _names(doc["clocks"], "$.clocks")
    locations = _names(doc["locations"], "$.locations")
    if not isinstance(doc["initial"], str):
        raise ParseError("expected a string", path="$.initial")
    if not isinstance(doc["edges"], list):
        raise ParseError("expected an array", path="$.edges")

    edges = []
    for k, raw in enumerate(doc["edges"]):
        path = f"$.edges[{k}]"
        if not isinstance(raw, dict):
            raise ParseError("expected an object", path=path)
        extra = set(raw) - _EDGE_KEYS
        if extra:
            raise ParseError(f"unknown fields {sorted(extra)}", path=path)
        for key in ("from", "to"):
            if not isinstance(raw.get(key), str):
                raise ParseError(f"'{key}' must be a string", path=path)
        guard_doc = raw.get("guard", {})
        if not isinstance(guard_doc, dict):
            raise ParseError("expected an object", path=f"{path}.guard")
        guard = {}
        for clock, bounds in guard_doc.items():
            gpath = f"{path}.guard.{clock}"
            if not isinstance(bounds, list) or len(bounds) != 2:
                raise ParseError("expected [lower, upper]", path=gpath)
            lo = _nat(bounds[0], gpath + "[0]")
            hi = INF if bounds[1] is None else _nat(bounds[1], gpath + "[1]")
            guard[clock] = Interval(lo, hi)
        reset = _names(raw.get("reset", []), f"{path}.reset")
        edges.append((raw["from"], raw["to"], guard, reset))
    return build_model(clocks, locations, doc["initial"], edges)


def model_to_dict(model: TimedAutomaton) -> dict:
    edges = []
    for e in sorted(model.edges, key=lambda e: e.ordinal):
        item = {"from": model.locations[e.source], "to": model.locations[e.target]}
        guard = {
            model.clocks[i]: [iv.lower, None if iv.upper == INF else iv.upper]
            for i, iv in enumerate(e.guard)
            if iv != TRUE_INTERVAL
        }
        if guard:
            item["guard"] = guard
        if e.reset:
            item["reset"] = [model.clocks[i] for i in sorted(e.reset)]
        edges.append(item)
    return {
        "clocks": list(model.clocks),
        "locations": list(model.locations),
        "initial": model.locations[model.initial],
        "edges": edges,
    }


def dump_model(model: TimedAutomaton) -> bytes:
    validate(model)
    return (json.dumps(model_to_dict(model), indent=2) + "\n").encode("utf-8")
