import random

import pytest

from timedarts.darts import (
    DartSearch,
    InvariantViolation,
    PassedWaitingList,
    TimeDart,
    explore_dart,
    passed_points,
    reach_darts,
    successor_window,
    waiting_points,
)
from timedarts.model import INF, Interval, build_model
from timedarts.modelgen import gen_fig4, gen_lcm
from timedarts.naive import reach_naive
from timedarts.search import Limits, ResourceLimit, SearchOrder


class TestPoints:
    def test_waiting(self):
        assert waiting_points(TimeDart((2, 0), 2, 5), 10) == [(4, 2), (5, 3), (6, 4)]
        assert waiting_points(TimeDart((0, 0), 0, 0), 10) == []
        assert waiting_points(TimeDart((2, 0), 2, INF), 4) == [(4, 2), (5, 3)]

    def test_passed(self):
        assert passed_points(TimeDart((2, 0), 2, 5), 8) == [(7, 5), (8, 6), (9, 7)]
        assert passed_points(TimeDart((2, 0), 2, INF), 8) == []
        assert passed_points(TimeDart((0, 0), 0, 0), 2) == [(0, 0), (1, 1)]


class TestWindow:
    def test_guard_box(self):
        assert successor_window((2, 0), 2, (Interval(3, 7), Interval(4, INF)))[:2] == (4, 5)

    def test_unbounded_end(self):
        assert successor_window((3, 0), 2, (Interval(4, INF), Interval(4, INF)))[:2] == (4, INF)

    def test_upper_bound_only(self):
        assert successor_window((2, 0), 2, (Interval(0, INF), Interval(0, 6)))[:2] == (2, 6)

    def test_negative_differences_clamped_by_w(self):
        start, end, _ = successor_window((5, 0), 0, (Interval(1, 3), Interval()))
        assert start == 0 and end == -2


def _one_edge(guard, reset=()):
    return build_model(["x", "y"], ["l", "m"], "l", [("l", "m", guard, list(reset))])


class TestExploreDart:
    def test_unchanged_anchor(self):
        m = _one_edge({"x": Interval(3, 7), "y": Interval(4, INF)})
        assert explore_dart(m, 8, 0, (2, 0), 2, 5) == [(1, TimeDart((2, 0), 4, INF))]

    def test_anchor_shift(self):
        m = _one_edge({"x": Interval(4, INF), "y": Interval(4, INF)})
        assert explore_dart(m, 5, 0, (3, 0), 2, 5) == [(1, TimeDart((2, 0), 4, INF))]

    def test_reset_fanout(self):
        m = _one_edge({"y": Interval(0, 6)}, ["y"])
        got = explore_dart(m, 8, 0, (2, 0), 2, 5)
        assert got == [(1, TimeDart(a, 0, INF)) for a in [(4, 0), (5, 0), (6, 0)]]

    def test_self_loop_stop_bound(self):
        got = explore_dart(gen_fig4(), 2, 1, (0, 0), 2, INF)
        assert got[:2] == [(1, TimeDart((0, 2), 0, INF)), (1, TimeDart((0, 3), 0, INF))]

    def test_reset_all_clocks_emits_once(self):
        m = _one_edge({"x": Interval(1, INF)}, ["x", "y"])
        assert explore_dart(m, 3, 0, (0, 2), 0, INF) == [(1, TimeDart((0, 0), 0, INF))]

    def test_disabled_when_start_not_below_p(self):
        m = _one_edge({"x": Interval(3, INF)})
        assert explore_dart(m, 3, 0, (0, 0), 0, 3) == []

    def test_disabled_when_window_empty(self):
        m = _one_edge({"x": Interval(0, 1), "y": Interval(2, INF)})
        assert explore_dart(m, 2, 0, (0, 0), 0, INF) == []


class TestAddToPW:
    def _search(self, goal="l3"):
        return DartSearch(gen_fig4(), goal, check=True)

    def test_min_merge(self):
        s = self._search()
        s.pw.entries[(1, (0, 0))] = (2, 2)
        assert s.add_to_pw(1, (0, 0), 1, INF) is False
        assert s.pw.get((1, (0, 0))) == (1, 2)

    def test_absent_key(self):
        s = self._search()
        s.add_to_pw(1, (0, 2), 0, INF)
        assert s.pw.get((1, (0, 2))) == (0, INF)
        assert list(s.pw.dirty) == [(1, (0, 2))]

    def test_goal_hit_leaves_map_unchanged(self):
        s = self._search()
        s.add_to_pw(1, (0, 2), 0, INF)
        before = s.pw.snapshot()
        assert s.add_to_pw(3, (0, 0), 0, INF) is True
        assert s.pw.snapshot() == before
        assert s.result.discovered == 2

    def test_anchor_without_zero_rejected(self):
        with pytest.raises(InvariantViolation):
            self._search().add_to_pw(1, (1, 1), 0, INF)

    def test_queued_at_most_once(self):
        pw = PassedWaitingList()
        for w in (3, 2, 1):
            pw.merge((0, (0,)), w, INF)
        assert list(pw.dirty) == [(0, (0,))]
        assert pw.pop(SearchOrder.FIFO) == (0, (0,))
        assert pw.pop(SearchOrder.FIFO) is None

    def test_stale_keys_skipped(self):
        pw = PassedWaitingList()
        pw.merge("a", 0, INF)
        pw.merge("b", 0, INF)
        pw.entries["a"] = (0, 0)
        assert pw.pop(SearchOrder.FIFO) == "b"

    def test_lifo_pops_newest(self):
        pw = PassedWaitingList()
        for k in "abc":
            pw.merge(k, 0, INF)
        assert pw.pop(SearchOrder.LIFO) == "c"

    def test_random_merges_never_grow(self):
        rng = random.Random(3)
        pw = PassedWaitingList()
        for _ in range(2000):
            key = rng.randrange(5)
            w = rng.randint(0, 6)
            p = rng.choice([INF, rng.randint(w, 6)])
            old = pw.get(key)
            pw.merge(key, w, p)
            new = pw.get(key)
            if old is not None:
                assert new[0] <= old[0] and new[1] <= old[1]
            assert new[0] <= new[1]
            if rng.random() < 0.2:
                pw.pop(SearchOrder.FIFO)
            # queue holds exactly the flagged keys, once each
            assert sorted(pw.dirty) == sorted(pw.queued)


class TestReachDarts:
    def test_fig4(self):
        s = DartSearch(gen_fig4(), "l3", check=True)
        res = s.run()
        assert not res.reachable and res.iterations == 7 and res.stored == 6

    def test_goal_is_initial(self):
        res = reach_darts(gen_fig4(), "l0")
        assert res.reachable and res.stored == 0 and res.discovered == 1

    def test_lcm3(self):
        assert reach_darts(gen_lcm(3), "Goal", check=True).reachable
        assert reach_naive(gen_lcm(3), "Goal").reachable

    def test_trace_lines(self):
        lines = []
        reach_darts(gen_fig4(), "l3", trace=lines.append)
        assert len(lines) == 7
        assert lines[0] == "iter=1 picked=l0,(0,0) pw={l0,(0,0):(0,0); l1,(0,0):(2,inf)}"
        assert lines[-1].startswith("iter=7 picked=l1,(0,1) ")

    def test_lifo_agrees(self):
        for goal in ("l0", "l1", "l2", "l3"):
            assert reach_darts(gen_fig4(), goal, "lifo", check=True).reachable == reach_naive(gen_fig4(), goal).reachable

    def test_limits(self):
        with pytest.raises(ResourceLimit) as info:
            reach_darts(gen_lcm(4), "Goal", limits=Limits(max_stored=3))
        assert info.value.kind == "max-stored"
        with pytest.raises(ResourceLimit) as info:
            reach_darts(gen_lcm(4), "Goal", limits=Limits(timeout=0))
        assert info.value.kind == "timeout"
