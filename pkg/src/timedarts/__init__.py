"""Discrete-time reachability for closed timed automata.

Two engines decide location reachability: ``reach_naive`` stores every
configuration explicitly, ``reach_darts`` stores time-darts.
"""

from .darts import DartSearch, TimeDart, reach_darts
from .model import (
    INF,
    Interval,
    ParseError,
    TimedAutomaton,
    ValidationError,
    build_model,
    dump_model,
    load_model,
    max_constant,
    normalize_guard,
    validate,
)
from .naive import min_goal_delay, reach_naive
from .search import Limits, ReachResult, ResourceLimit, SearchOrder

__all__ = [
    "INF",
    "DartSearch",
    "Interval",
    "Limits",
    "ParseError",
    "ReachResult",
    "ResourceLimit",
    "SearchOrder",
    "TimeDart",
    "TimedAutomaton",
    "ValidationError",
    "build_model",
    "dump_model",
    "load_model",
    "max_constant",
    "min_goal_delay",
    "normalize_guard",
    "reach_darts",
    "reach_naive",
    "validate",
]
