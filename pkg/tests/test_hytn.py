import random

import pytest

from cstndc import (
    Feasible,
    Hyperarc,
    Hytn,
    HytnStructureError,
    Inconsistent,
    Scenario,
    Stn,
    gamma_box,
    restrict,
    solve_hytn,
    stn_consistency,
)
from cstndc import lifting

from oracles import bellman_ford_consistent


def window():
    return Stn(("bot", "top"), (("bot", "top", 1), ("top", "bot", -1)))


def random_stn(rng, max_nodes=50, max_weight=20):
    n = rng.randint(2, max_nodes)
    nodes = tuple(f"v{i}" for i in range(n))
    arcs = []
    for _ in range(rng.randint(1, 3 * n)):
        u, v = rng.sample(nodes, 2)
        arcs.append((u, v, rng.randint(-max_weight, max_weight)))
    return Stn(nodes, tuple(arcs))


class TestStructure:
    def test_empty_heads_rejected(self):
        with pytest.raises(HytnStructureError):
            Hyperarc("t", ())

    def test_tail_among_heads_rejected(self):
        with pytest.raises(HytnStructureError):
            Hyperarc.make("t", {"t": 0, "x": 1})

    def test_unknown_node_rejected(self):
        with pytest.raises(HytnStructureError):
            Hytn(("a",), (Hyperarc.make("a", {"zz": 0}),))

    def test_bool_weight_rejected(self):
        with pytest.raises(HytnStructureError):
            Hyperarc.make("a", {"b": True})


class TestSolve:
    def test_unit_window_pins_schedule(self):
        result = stn_consistency(window())
        assert isinstance(result, Feasible)
        assert result.schedule == {"bot": 0, "top": 1}

    def test_negative_cycle_refuted(self):
        result = stn_consistency(Stn(("u", "v"), (("u", "v", -1), ("v", "u", 0))))
        assert isinstance(result, Inconsistent)
        assert result.certificate

    def test_min_over_heads_picks_cheapest(self):
        h = Hytn(
            ("z", "a", "b", "t"),
            (
                Hyperarc.make("z", {"a": 0}),
                Hyperarc.make("a", {"z": 0}),
                Hyperarc.make("b", {"z": -5}),
                Hyperarc.make("z", {"b": 5}),
                Hyperarc.make("t", {"a": 0, "b": 0}),
            ),
        )
        result = solve_hytn(h)
        assert isinstance(result, Feasible)
        assert result.schedule["b"] == 5
        assert result.schedule["t"] == 0  # min semantics lets the early head justify t

    def test_box_restriction_feasible(self):
        g = gamma_box()
        s = Scenario.of({"a": False, "b": False, "c": False})
        assert isinstance(stn_consistency(restrict(g, s)), Feasible)

    def test_empty_network(self):
        assert stn_consistency(Stn((), ())).schedule == {}

    def test_negative_self_arc(self):
        assert isinstance(stn_consistency(Stn(("u",), (("u", "u", -1),))), Inconsistent)
        assert stn_consistency(Stn(("u",), (("u", "u", 3),))).feasible

    def test_feasible_schedule_is_fixpoint(self):
        h = Hytn(
            ("a", "b", "c"),
            (
                Hyperarc.make("a", {"b": -2, "c": 1}),
                Hyperarc.make("b", {"c": -1}),
                Hyperarc.make("c", {"a": 5}),
            ),
        )
        first = solve_hytn(h)
        assert isinstance(first, Feasible)
        for arc in h.hyperarcs:
            bound = min(first.schedule[v] - w for v, w in arc.heads)
            assert first.schedule[arc.tail] >= bound
        assert solve_hytn(h).schedule == first.schedule


class TestAgainstBellmanFord:
    def test_verdicts_and_bounds_match(self):
        rng = random.Random(20240901)
        for _ in range(300):
            stn = random_stn(rng, max_nodes=12, max_weight=8)
            ok, _ = bellman_ford_consistent(stn.nodes, stn.arcs)
            result = stn_consistency(stn)
            assert result.feasible == ok
            if isinstance(result, Feasible):
                w_max = max(abs(w) for _, _, w in stn.arcs)
                bound = (len(stn.nodes) + len(stn.arcs)) * w_max
                for u, v, w in stn.arcs:
                    assert result.schedule[v] - result.schedule[u] <= w
                for t in result.schedule.values():
                    assert 0 <= t <= bound


class TestKernels:
    def test_kernels_agree_exactly(self):
        rng = random.Random(5)
        for _ in range(60):
            stn = random_stn(rng, max_nodes=10, max_weight=6)
            a = stn_consistency(stn, kernel="python")
            b = stn_consistency(stn, kernel="numba")
            assert type(a) is type(b)
            if isinstance(a, Feasible):
                assert a.schedule == b.schedule
            else:
                assert a.certificate == b.certificate

    def test_env_flag_selects_python(self, monkeypatch):
        monkeypatch.setenv(lifting.ENV_DISABLE, "1")
        assert lifting.select_kernel(10, 10, 10) == "python"
        monkeypatch.delenv(lifting.ENV_DISABLE)
        if lifting.HAS_NUMBA:
            assert lifting.select_kernel(10, 10, 10) == "numba"

    def test_huge_weights_fall_back_to_python(self):
        big = 2**61
        assert lifting.select_kernel(2, 2, big) == "python"
        stn = Stn(("a", "b"), (("a", "b", big), ("b", "a", -big)))
        result = stn_consistency(stn)
        assert isinstance(result, Feasible)
        assert result.schedule["b"] - result.schedule["a"] == big

    def test_forcing_numba_beyond_bound_errors(self):
        big = 2**61
        h = Hytn(("a", "b"), (Hyperarc.make("a", {"b": big}),))
        with pytest.raises(OverflowError):
            solve_hytn(h, kernel="numba")


class TestSubsetSoundness:
    def test_dropping_any_arc_from_refuted_instance_stays_sound(self):
        h = Hytn(
            ("a", "b", "c"),
            (
                Hyperarc.make("a", {"b": -1}),
                Hyperarc.make("b", {"c": -1}),
                Hyperarc.make("c", {"a": -1}),
                Hyperarc.make("a", {"c": 4}),
            ),
        )
        assert isinstance(solve_hytn(h), Inconsistent)
        for skip in range(len(h.hyperarcs)):
            sub = Hytn(h.nodes, tuple(a for i, a in enumerate(h.hyperarcs) if i != skip))
            result = solve_hytn(sub)
            if isinstance(result, Feasible):
                for arc in sub.hyperarcs:
                    bound = min(result.schedule[v] - w for v, w in arc.heads)
                    assert result.schedule[arc.tail] >= bound
