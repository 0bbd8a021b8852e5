"""Deciding dynamic consistency through hyperarc encodings.

For a reaction time ε ≥ 0, a strategy must respect, for every ordered scenario
pair (s1, s2) and shared event u,

    σ(s1)_u ≥ min({σ(s2)_u} ∪ {σ(s1)_v + ε : v observed differently under s1}).

Each such bound is one hyperarc over the scenario expansion; the network has a
valid strategy for reaction time ε exactly when that hyperarc network is
consistent. Plain dynamic consistency coincides with the threshold reaction
time 1/(|Σ|·|V|). Rational ε is handled by scaling every weight by its
denominator so the solver only ever sees integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hytn import Feasible, Hyperarc, Hytn, solve_hytn
from .labels import Scenario
from .network import Cstn, difference_set, present_nodes, restrict, scenario_node_id
from .strategy import ExecStrategy, SelfValidationError, Time, validate_es


@dataclass(frozen=True, eq=False)
class EpsHytnEncoding:
    """Scenario-expansion hyperarc network with all weights scaled integral."""

    hytn: Hytn
    scale: int
    origin: dict[str, tuple[str, Scenario]]


def _as_time(x: Fraction) -> Time:
    return int(x) if x.denominator == 1 else x


def build_eps_hytn(g: Cstn, eps: Fraction | int) -> EpsHytnEncoding:
    """Encode the reaction-time-ε bounds over the scenario expansion.

    Weights are multiplied by ε's denominator q, so arc weights become q·w and
    the hyperarc reaction heads carry −p where ε = p/q in lowest terms. A
    bound whose event is itself observed differently (u ∈ Δ(s1;s2)) is
    vacuous at ε = 0 and its self-head can never witness the minimum at
    ε > 0, so the self-head is omitted either way.
    """
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("reaction time must be nonnegative")
    p, q = eps.numerator, eps.denominator
    scenarios = g.scenarios()
    nodes: list[str] = []
    origin: dict[str, tuple[str, Scenario]] = {}
    present: dict[Scenario, tuple[str, ...]] = {}
    for s in scenarios:
        present[s] = present_nodes(g, s)
        for v in present[s]:
            nid = scenario_node_id(v, s)
            nodes.append(nid)
            origin[nid] = (v, s)
    arcs: list[Hyperarc] = []
    for s in scenarios:
        for u, v, w in restrict(g, s).arcs:
            if u == v:
                continue
            arcs.append(Hyperarc.make(scenario_node_id(u, s), {scenario_node_id(v, s): q * w}))
    for s1 in scenarios:
        in_s1 = set(present[s1])
        for s2 in scenarios:
            if s1 == s2:
                continue
            delta = sorted(difference_set(g, s1, s2))
            for u in present[s2]:
                if u not in in_s1:
                    continue
                if p == 0 and u in delta:
                    continue
                heads = {scenario_node_id(u, s2): 0}
                for v in delta:
                    if v != u:
                        heads[scenario_node_id(v, s1)] = -p
                arcs.append(Hyperarc.make(scenario_node_id(u, s1), heads))
    return EpsHytnEncoding(Hytn(tuple(nodes), tuple(arcs)), q, origin)


def _extract_strategy(enc: EpsHytnEncoding, g: Cstn, schedule: dict[str, int]) -> ExecStrategy:
    per: dict[Scenario, dict[str, Time]] = {s: {} for s in g.scenarios()}
    for nid, (v, s) in enc.origin.items():
        per[s][v] = _as_time(Fraction(schedule[nid], enc.scale))
    return ExecStrategy(per)


def check_eps_dc(g: Cstn, eps: Fraction | int) -> ExecStrategy | None:
    """Strategy achieving reaction time ε, or None when none exists.

    Every returned strategy has already passed the brute-force viability and
    reaction-time validators; a validator rejection is an internal error, not
    a NO answer.
    """
    # A negative self-arc is active in some scenario (labels are satisfiable)
    # and unsatisfiable there, so no strategy can be viable at any ε.
    if any(c.u == c.v and c.w < 0 for c in g.constraints):
        return None
    enc = build_eps_hytn(g, eps)
    result = solve_hytn(enc.hytn)
    if not isinstance(result, Feasible):
        return None
    sigma = _extract_strategy(enc, g, result.schedule)
    for mode, extra in (("viability", None), ("eps", Fraction(eps))):
        report = validate_es(g, sigma, mode, eps=extra)
        if not report.ok:
            raise SelfValidationError(
                f"extracted strategy failed {mode} validation: {report.violations[0].message}"
            )
    return sigma


def epsilon_hat(g: Cstn) -> Fraction:
    """Threshold reaction time below which nothing new happens: 1/(|Σ|·|V|)."""
    if not g.nodes:
        raise ValueError("threshold reaction time is undefined for an empty network")
    return Fraction(1, (2 ** len(g.letters)) * len(g.nodes))


def check_dc(g: Cstn) -> ExecStrategy | None:
    """Decide dynamic consistency via the threshold reaction time.

    A YES strategy is additionally checked against the history-based
    dynamicity validator; failure there is an internal error.
    """
    if not g.nodes:
        return ExecStrategy({s: {} for s in g.scenarios()})
    sigma = check_eps_dc(g, epsilon_hat(g))
    if sigma is None:
        return None
    report = validate_es(g, sigma, "dynamic")
    if not report.ok:
        raise SelfValidationError(
            f"threshold-reaction strategy is not dynamic: {report.violations[0].message}"
        )
    return sigma
