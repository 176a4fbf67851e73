"""Types shared by the reachability engines."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass


class SearchOrder(enum.Enum):
    FIFO = "fifo"
    LIFO = "lifo"


@dataclass
class ReachResult:
    reachable: bool
    discovered: int = 0  # AddToPW calls, duplicates included
    stored: int = 0  # size of the passed-waiting structure at termination
    iterations: int = 0
    elapsed: float = 0.0  # seconds

    def stats_line(self) -> str:
        return (
            f"discovered={self.discovered} stored={self.stored} "
            f"iterations={self.iterations} time_ms={int(self.elapsed * 1000)}"
        )


@dataclass(frozen=True)
class Limits:
    max_stored: int = 10_000_000
    timeout: float = 300.0  # seconds


DEFAULT_LIMITS = Limits()


class ResourceLimit(Exception):
    """A search was cut off before reaching a verdict.

    ``kind`` is ``"timeout"`` or ``"max-stored"``; ``result`` carries the
    statistics at the moment of interruption (``reachable`` is False and
    meaningless).
    """

    def __init__(self, kind: str, result: ReachResult):
        self.kind = kind
        self.result = result
        super().__init__(f"search interrupted ({kind}) after {result.stats_line()}")


class Budget:
    """Deadline and size cap bookkeeping for one engine run."""

    __slots__ = ("limits", "started", "deadline")

    def __init__(self, limits: Limits):
        self.limits = limits
        self.started = time.perf_counter()
        self.deadline = self.started + limits.timeout

    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def check(self, result: ReachResult, stored: int, check_clock: bool = True) -> None:
        if stored > self.limits.max_stored:
            result.stored = stored
            result.elapsed = self.elapsed()
            raise ResourceLimit("max-stored", result)
        if check_clock and time.perf_counter() >= self.deadline:
            result.stored = stored
            result.elapsed = self.elapsed()
            raise ResourceLimit("timeout", result)
