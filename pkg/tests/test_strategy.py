from fractions import Fraction

import pytest

from cstndc import (
    Cstn,
    ExecStrategy,
    LabelledConstraint,
    PiExecStrategy,
    Scenario,
    StrategyDomainError,
    gamma_box,
    gamma_pi,
    history,
    pi_history,
    parse_label,
    sigma_box_strategy,
    single_node,
    validate_es,
    validate_pi_es,
)


def pi_strategy():
    """The reference ordered strategy for the pi network (reaction on the spot)."""
    g = gamma_pi()
    s_true = Scenario.of({"p": True})
    s_false = Scenario.of({"p": False})
    times = {
        s_true: {"Op": 0, "X": 0, "top": 1},
        s_false: {"Op": 0, "X": 1, "top": 1},
    }
    positions = {s_true: {"Op": 1}, s_false: {"Op": 1}}
    return g, PiExecStrategy(times, positions)


class TestHistory:
    def test_box_history_is_strict_in_time(self):
        g, sigma = gamma_box(), sigma_box_strategy()
        s = Scenario.of({"a": False, "b": False, "c": False})
        h = history(g, sigma, s, 1)
        assert dict(h.items) == {"a": False, "b": False}  # C runs at 1, excluded

    def test_nothing_before_zero(self):
        g, sigma = gamma_box(), sigma_box_strategy()
        for s in g.scenarios():
            assert history(g, sigma, s, 0).items == ()

    def test_pi_history_counts_equal_times(self):
        g, sigma = pi_strategy()
        s_true = Scenario.of({"p": True})
        assert dict(pi_history(g, sigma, s_true, 0, 2).items) == {"p": True}
        assert pi_history(g, sigma, s_true, 0, 1).items == ()
        assert pi_history(g, sigma, s_true, -1, 5).items == ()

    def test_prop_history_at_one(self):
        g, sigma = pi_strategy()
        es = ExecStrategy(sigma.times)
        s_true = Scenario.of({"p": True})
        assert dict(history(g, es, s_true, 1).items) == {"p": True}

    def test_history_monotone(self):
        g, sigma = gamma_box(), sigma_box_strategy()
        for s in g.scenarios():
            prev = set()
            for tau in (0, Fraction(1, 2), 1, 2):
                cur = set(history(g, sigma, s, tau).items)
                assert prev <= cur
                prev = cur

    def test_pi_history_monotone_in_time_and_position(self):
        g, sigma = pi_strategy()
        for s in g.scenarios():
            base = set(pi_history(g, sigma, s, 0, 1).items)
            wider = set(pi_history(g, sigma, s, 1, 3).items)
            assert base <= wider


class TestValidateEs:
    def test_box_strategy_viable(self):
        assert validate_es(gamma_box(), sigma_box_strategy(), "viability").ok

    def test_box_strategy_zero_reaction(self):
        assert validate_es(gamma_box(), sigma_box_strategy(), "eps", eps=0).ok

    def test_box_strategy_not_dynamic(self):
        report = validate_es(gamma_box(), sigma_box_strategy(), "dynamic")
        assert not report.ok
        # The defect is structural: some observation runs at 0 with an empty
        # history yet moves in another scenario - no common first observation.
        details = [dict(v.details) for v in report]
        assert any(d["tau"] == "0" and d["history"] == "" for d in details)

    def test_single_node_everything_passes(self):
        g = single_node()
        sigma = ExecStrategy({s: {"v0": 0} for s in g.scenarios()})
        for mode, eps in (("viability", None), ("dynamic", None), ("eps", 0)):
            assert validate_es(g, sigma, mode, eps=eps).ok

    def test_domain_mismatch_raises(self):
        g = gamma_box()
        sigma = ExecStrategy({s: {"bot": 0} for s in g.scenarios()})
        with pytest.raises(StrategyDomainError):
            validate_es(g, sigma, "viability")

    def test_viability_witnesses_carry_the_arc(self):
        g, sigma = gamma_box(), sigma_box_strategy()
        broken = {s: dict(t) for s, t in sigma.schedules.items()}
        s0 = g.scenarios()[0]
        broken[s0]["top"] = 3
        report = validate_es(g, ExecStrategy(broken), "viability")
        assert any(
            v.kind == "viability" and dict(v.details)["v"] == "top" for v in report
        )


class TestValidatePiEs:
    def test_reference_pi_strategy_accepted(self):
        g, sigma = pi_strategy()
        assert validate_pi_es(g, sigma).ok

    def test_box_strategy_with_positions_rejected(self):
        g, es = gamma_box(), sigma_box_strategy()
        positions = {}
        for s in g.scenarios():
            order = sorted(("A", "B", "C"), key=lambda v: (es.schedules[s][v], v))
            positions[s] = {v: i + 1 for i, v in enumerate(order)}
        report = validate_pi_es(g, PiExecStrategy(es.schedules, positions))
        assert not report.ok
        assert {"pi-dynamic", "first-observation"} & report.kinds()

    def test_positions_contradicting_times_is_incoherent(self):
        g, sigma = pi_strategy()
        g2 = Cstn(
            nodes=("Op", "Oq"),
            letters=("p", "q"),
            node_labels={},
            observers={"p": "Op", "q": "Oq"},
            constraints=(LabelledConstraint("Op", "Oq", 1),),
        )
        times = {s: {"Op": 0, "Oq": 1} for s in g2.scenarios()}
        positions = {s: {"Op": 2, "Oq": 1} for s in g2.scenarios()}
        report = validate_pi_es(g2, PiExecStrategy(times, positions))
        assert "coherence" in report.kinds()

    def test_differing_first_observation_rejected(self):
        g = Cstn(
            nodes=("Op", "Oq"),
            letters=("p", "q"),
            node_labels={},
            observers={"p": "Op", "q": "Oq"},
            constraints=(),
        )
        times = {s: {"Op": 0, "Oq": 0} for s in g.scenarios()}
        positions = {}
        for s in g.scenarios():
            flip = s.value("p")
            positions[s] = {"Op": 1, "Oq": 2} if flip else {"Op": 2, "Oq": 1}
        report = validate_pi_es(g, PiExecStrategy(times, positions))
        assert "first-observation" in report.kinds()

    def test_malformed_positions_raise(self):
        g, sigma = pi_strategy()
        bad = {s: {"Op": 7} for s in g.scenarios()}
        with pytest.raises(Exception):
            validate_pi_es(g, PiExecStrategy(sigma.times, bad))
