import math
from fractions import Fraction

import pytest

from cstndc import (
    ExecStrategy,
    Scenario,
    check_dc,
    check_eps_dc,
    check_pi_dc,
    eta_is_valid,
    gamma_box,
    gamma_pi,
    random_cstn,
    relax_cstn,
    round_to_pi_es,
    select_eta,
    single_node,
    validate_pi_es,
)


class TestRelaxation:
    def test_box_scale_and_weights(self):
        relaxed = relax_cstn(gamma_box())
        assert relaxed.scale == 8 * 25 + 1 == 201
        assert relaxed.gamma == Fraction(1, 201)
        by_weight = {c.w for c in relaxed.cstn.constraints}
        assert by_weight == {206, 5, -196}  # 201·w + 5 for w in {1, 0, -1}

    def test_pi_scale_and_weights(self):
        relaxed = relax_cstn(gamma_pi())
        assert relaxed.scale == 2 * 9 + 1 == 19
        weights = sorted({c.w for c in relaxed.cstn.constraints})
        assert weights == [-16, 3, 22]

    def test_zero_weight_becomes_node_count(self):
        relaxed = relax_cstn(gamma_pi())
        zero_arcs = [c for c in relaxed.cstn.constraints if c.ell.letters()]
        assert all(c.w == 3 for c in zero_arcs)

    def test_structure_unchanged(self):
        g = gamma_box()
        relaxed = relax_cstn(g)
        assert relaxed.cstn.nodes == g.nodes
        assert relaxed.cstn.letters == g.letters
        assert relaxed.cstn.observers == g.observers


class TestShiftSelection:
    def test_interval_membership_example(self):
        values = [Fraction(0), Fraction(35, 100)]
        gap = Fraction(2, 10)
        assert eta_is_valid(values, Fraction(1, 2), gap)
        assert not eta_is_valid(values, Fraction(0), gap)
        assert not eta_is_valid(values, Fraction(34, 100), gap)  # inside (0.15, 0.35]
        assert not eta_is_valid(values, Fraction(9, 10), gap)  # wraps into the 0 chunk

    def test_integral_values_take_first_gamma_step(self):
        g = gamma_pi()
        relaxed = relax_cstn(g)
        sigma = ExecStrategy(
            {s: {v: 0 for v in g.nodes} for s in g.scenarios()}
        )
        eta = select_eta(sigma, relaxed)
        assert eta == relaxed.gamma
        gap = len(g.nodes) * relaxed.gamma
        assert eta_is_valid([Fraction(0)], eta, gap)

    def test_postcondition_on_pipeline_values(self):
        g = gamma_pi()
        relaxed = relax_cstn(g)
        sigma = check_dc(relaxed.cstn)
        assert sigma is not None
        eta = select_eta(sigma, relaxed)
        assert 0 <= eta < 1
        assert eta.denominator <= relaxed.scale  # a multiple of the grid step
        gap = len(g.nodes) * relaxed.gamma
        values = [
            Fraction(t) / relaxed.scale
            for times in sigma.schedules.values()
            for t in times.values()
        ]
        assert eta_is_valid(values, eta, gap)
        for x in values:
            frac = (x - eta) % 1
            assert frac >= gap  # the shifted grid keeps its safety margin


class TestRounding:
    def test_floor_and_positions(self):
        g = gamma_pi()
        s_true = Scenario.of({"p": True})
        s_false = Scenario.of({"p": False})
        sigma = ExecStrategy(
            {
                s_true: {"Op": Fraction(1, 2), "X": Fraction(1, 2), "top": Fraction(3, 2)},
                s_false: {"Op": Fraction(1, 2), "X": Fraction(3, 2), "top": Fraction(3, 2)},
            }
        )
        rounded = round_to_pi_es(sigma, Fraction(0), g)
        assert rounded.times[s_true] == {"Op": 0, "X": 0, "top": 1}
        assert rounded.times[s_false] == {"Op": 0, "X": 1, "top": 1}
        assert rounded.positions[s_true] == {"Op": 1}

    def test_pipeline_output_matches_reference_shape(self):
        g = gamma_pi()
        sigma = check_pi_dc(g)
        assert sigma is not None
        s_true = Scenario.of({"p": True})
        s_false = Scenario.of({"p": False})
        assert sigma.times[s_true] == {"Op": 0, "X": 0, "top": 1}
        assert sigma.times[s_false] == {"Op": 0, "X": 1, "top": 1}
        assert sigma.positions[s_true]["Op"] == 1
        assert sigma.positions[s_false]["Op"] == 1

    def test_rounded_times_are_integers_from_zero(self):
        for seed in range(30):
            g = random_cstn(seed)
            sigma = check_pi_dc(g)
            if sigma is None:
                continue
            times = [t for sched in sigma.times.values() for t in sched.values()]
            assert all(isinstance(t, int) for t in times)
            assert min(times) == 0


class TestVerdicts:
    def test_box_is_not_ordered_consistent(self):
        assert check_pi_dc(gamma_box()) is None

    def test_pi_network_is_ordered_consistent(self):
        assert check_pi_dc(gamma_pi()) is not None

    def test_single_node(self):
        sigma = check_pi_dc(single_node())
        assert sigma is not None

    def test_yes_strategies_revalidate(self):
        for seed in range(30):
            g = random_cstn(seed)
            sigma = check_pi_dc(g)
            if sigma is not None:
                assert validate_pi_es(g, sigma).ok

    def test_implication_chain(self):
        # dynamic consistency implies ordered consistency implies zero-reaction
        nets = [gamma_box(), gamma_pi(), single_node()] + [random_cstn(s) for s in range(30)]
        for g in nets:
            dc = check_dc(g) is not None
            pi = check_pi_dc(g) is not None
            zero = check_eps_dc(g, 0) is not None
            assert not dc or pi
            assert not pi or zero
