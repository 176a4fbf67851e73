"""Benchmark harness: one CSV row per (model instance, engine) run."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

from .darts import reach_darts
from .model import load_model
from .modelgen import gen_fischer, gen_lcm
from .naive import reach_naive
from .search import Limits, ResourceLimit, SearchOrder

ENGINES = {"naive": reach_naive, "darts": reach_darts}
CSV_HEADER = ["model", "param", "engine", "reachable", "discovered", "stored", "time_ms", "status"]

# suite name -> (instance builder, goal location)
SUITES = {
    "fischer": (gen_fischer, "violation"),
    "lcm": (gen_lcm, "Goal"),
}


@dataclass
class BenchRow:
    model: str
    param: int
    engine: str
    reachable: bool
    discovered: int
    stored: int
    time_ms: int
    status: str  # ok | timeout | oom-cap

    def csv_fields(self):
        row = list(astuple(self))
        row[3] = "true" if self.reachable else "false"
        return row


assert [f.name for f in fields(BenchRow)] == CSV_HEADER


def run_cell(name, param, engine, model, goal, limits: Limits, order=SearchOrder.FIFO) -> BenchRow:
    """Run one engine on one model; limits become a status, not an exception."""
    fn = ENGINES[engine]
    t0 = time.perf_counter()
    try:
        res = fn(model, goal, order, limits)
        status = "ok"
    except ResourceLimit as exc:
        res = exc.result
        status = "timeout" if exc.kind == "timeout" else "oom-cap"
    elapsed = res.elapsed or (time.perf_counter() - t0)
    return BenchRow(name, param, engine, bool(res.reachable and status == "ok"), res.discovered, res.stored, int(elapsed * 1000), status)


def suite_cells(suite, params, engines, models=(), goal=None):
    """Yield ``(name, param, engine, model, goal)`` in run order.

    ``suite`` is ``fischer``, ``lcm`` or ``custom``; the custom suite runs
    the model files in ``models`` (param = position in the list) against
    ``goal``.
    """
    if suite == "custom":
        if goal is None:
            raise ValueError("the custom suite needs a goal")
        for i, path in enumerate(models):
            with open(path, "rb") as fh:
                model = load_model(fh.read())
            for engine in engines:
                yield str(path), i, engine, model, goal
        return
    build, suite_goal = SUITES[suite]
    for p in params:
        model = build(p)
        for engine in engines:
            yield suite, p, engine, model, goal or suite_goal


def _run_packed(args):
    return run_cell(*args)


def run_bench(cells, limits: Limits, out, jobs: int = 1) -> list[BenchRow]:
    """Run ``cells`` and stream CSV rows to ``out`` as they complete, in order.

    Rows already written stay flushed if the run is interrupted.
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    out.flush()
    rows = []
    packed = [(*cell, limits) for cell in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_run_packed, packed)
            for row in results:
                writer.writerow(row.csv_fields())
                out.flush()
                rows.append(row)
    else:
        for args in packed:
            row = run_cell(*args)
            writer.writerow(row.csv_fields())
            out.flush()
            rows.append(row)
    return rows


def parse_params(text: str) -> list[int]:
    """``"3..9"`` (inclusive) or ``"3,6,9"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t.strip()]
