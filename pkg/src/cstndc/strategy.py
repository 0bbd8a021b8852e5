"""Execution strategies and their brute-force validators.

An execution strategy assigns each complete scenario a schedule of the events
present under it. The ordered variant additionally ranks the present
observation events with a per-scenario position bijection so that
simultaneous observations still have a definite order. The validators here
are deliberately exhaustive loops over all scenario pairs; they are the
ground truth every checker's YES answer is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .labels import Scenario
from .network import Cstn, ValidationReport, difference_set, present_nodes, present_observations, restrict

Time = Union[int, Fraction]


class StrategyDomainError(ValueError):
    """Strategy schedules do not cover exactly the present events."""


class MalformedPositionsError(ValueError):
    """Position maps are not bijections onto 1..|OV⁺_s|."""


class SelfValidationError(RuntimeError):
    """A checker produced a strategy its own ground-truth validator rejects."""


@dataclass(frozen=True, eq=False)
class ExecStrategy:
    """Per-scenario schedules; domain of each schedule is exactly V⁺_s."""

    schedules: Mapping[Scenario, Mapping[str, Time]]

    def times(self, s: Scenario) -> Mapping[str, Time]:
        return self.schedules[s]


@dataclass(frozen=True, eq=False)
class PiExecStrategy:
    """Schedules plus a position bijection over the present observations.

    Events that are not observations take the conventional position |OV|+1.
    """

    times: Mapping[Scenario, Mapping[str, Time]]
    positions: Mapping[Scenario, Mapping[str, int]]

    def time_strategy(self) -> ExecStrategy:
        return ExecStrategy(self.times)


def _check_domains(g: Cstn, schedules: Mapping[Scenario, Mapping[str, Time]]) -> None:
    expected = set(g.scenarios())
    got = set(schedules)
    if got != expected:
        raise StrategyDomainError(
            f"strategy covers {len(got)} scenarios, expected {len(expected)} complete scenarios"
        )
    for s in g.scenarios():
        dom = set(schedules[s])
        present = set(present_nodes(g, s))
        if dom != present:
            missing = sorted(present - dom)
            extra = sorted(dom - present)
            raise StrategyDomainError(
                f"schedule domain mismatch in scenario {s.bits()}: missing {missing}, extra {extra}"
            )


def _check_positions(g: Cstn, sigma: PiExecStrategy) -> None:
    for s in g.scenarios():
        obs = present_observations(g, s)
        pos = sigma.positions.get(s)
        if pos is None:
            raise MalformedPositionsError(f"no positions for scenario {s.bits()}")
        if set(pos) != set(obs):
            raise MalformedPositionsError(
                f"positions in scenario {s.bits()} must cover exactly the present observations"
            )
        if sorted(pos.values()) != list(range(1, len(obs) + 1)):
            raise MalformedPositionsError(
                f"positions in scenario {s.bits()} are not a bijection onto 1..{len(obs)}"
            )


def _position(g: Cstn, sigma: PiExecStrategy, s: Scenario, v: str) -> int:
    return sigma.positions[s].get(v, len(g.observation_nodes()) + 1)


def history(g: Cstn, sigma: ExecStrategy, s: Scenario, tau: Time) -> Scenario:
    """Letters observed strictly before tau under sigma in scenario s."""
    times = sigma.times(s)
    present = set(present_nodes(g, s))
    seen = {}
    for p in g.letters:
        op = g.observers[p]
        if op in present and times[op] < tau:
            seen[p] = s.value(p)
    return Scenario.of(seen)


def pi_history(g: Cstn, sigma: PiExecStrategy, s: Scenario, tau: Time, psi: int) -> Scenario:
    """Letters observed at time <= tau and position strictly before psi."""
    times = sigma.times[s]
    seen = {}
    for v in present_observations(g, s):
        if times[v] <= tau and sigma.positions[s][v] < psi:
            seen[g.observed_letter(v)] = s.value(g.observed_letter(v))
    return Scenario.of(seen)


def _viability(g: Cstn, schedules: Mapping[Scenario, Mapping[str, Time]], report: ValidationReport) -> None:
    for s in g.scenarios():
        times = schedules[s]
        for u, v, w in restrict(g, s).arcs:
            if times[v] - times[u] > w:
                report.add(
                    "viability",
                    f"scenario {s.bits()}: {v} - {u} = {times[v] - times[u]} exceeds {w}",
                    scenario=s.bits(), u=u, v=v, w=w, tu=times[u], tv=times[v],
                )


def validate_es(g: Cstn, sigma: ExecStrategy, mode: str, eps: Fraction | int | None = None) -> ValidationReport:
    """Check viability, dynamicity, or the reaction-time inequalities.

    mode "viability": every schedule is feasible for its restriction.
    mode "dynamic": whenever the history of v's time in s1 is consistent with
    s2, the event runs at the same time in s2.
    mode "eps": every bound
    σ(s1)_u ≥ min({σ(s2)_u} ∪ {σ(s1)_v + ε : v observed differently}) holds.
    """
    _check_domains(g, sigma.schedules)
    report = ValidationReport()
    if mode == "viability":
        _viability(g, sigma.schedules, report)
        return report
    if mode == "dynamic":
        scenarios = g.scenarios()
        for s1 in scenarios:
            p1 = set(present_nodes(g, s1))
            for s2 in scenarios:
                if s1 == s2:
                    continue
                shared = [v for v in present_nodes(g, s2) if v in p1]
                for v in shared:
                    tau = sigma.times(s1)[v]
                    hist = history(g, sigma, s1, tau)
                    if hist.consistent_with(s2) and sigma.times(s2)[v] != tau:
                        report.add(
                            "dynamic",
                            f"{v} runs at {tau} in {s1.bits()} with history {hist.bits() or 'λ'} "
                            f"consistent with {s2.bits()}, but at {sigma.times(s2)[v]} there",
                            s1=s1.bits(), s2=s2.bits(), v=v, tau=tau,
                            history=hist.as_label(), other=sigma.times(s2)[v],
                        )
        return report
    if mode == "eps":
        if eps is None or eps < 0:
            raise ValueError("mode 'eps' needs a nonnegative reaction time")
        eps = Fraction(eps)
        scenarios = g.scenarios()
        for s1 in scenarios:
            p1 = set(present_nodes(g, s1))
            for s2 in scenarios:
                if s1 == s2:
                    continue
                delta = sorted(difference_set(g, s1, s2))
                shared = [u for u in present_nodes(g, s2) if u in p1]
                for u in shared:
                    t1 = sigma.times(s1)
                    candidates = [sigma.times(s2)[u]] + [t1[v] + eps for v in delta]
                    bound = min(candidates)
                    if t1[u] < bound:
                        report.add(
                            "eps-dynamic",
                            f"{u} at {t1[u]} in {s1.bits()} undercuts min bound {bound} vs {s2.bits()}",
                            s1=s1.bits(), s2=s2.bits(), u=u, time=t1[u], bound=bound, eps=eps,
                        )
        return report
    raise ValueError(f"unknown mode {mode!r}")


def validate_pi_es(g: Cstn, sigma: PiExecStrategy) -> ValidationReport:
    """Coherence, viability, ordered dynamicity, and the common-first-observation rule."""
    _check_domains(g, sigma.times)
    _check_positions(g, sigma)
    report = ValidationReport()
    scenarios = g.scenarios()
    for s in scenarios:
        times = sigma.times[s]
        pos = sigma.positions[s]
        obs = present_observations(g, s)
        for a in obs:
            for b in obs:
                if times[a] < times[b] and pos[a] >= pos[b]:
                    report.add(
                        "coherence",
                        f"scenario {s.bits()}: {a} runs before {b} but has position {pos[a]} >= {pos[b]}",
                        scenario=s.bits(), earlier=a, later=b,
                    )
    _viability(g, sigma.times, report)
    for s1 in scenarios:
        p1 = set(present_nodes(g, s1))
        for s2 in scenarios:
            if s1 == s2:
                continue
            shared = [v for v in present_nodes(g, s2) if v in p1]
            for v in shared:
                tau = sigma.times[s1][v]
                psi = _position(g, sigma, s1, v)
                hist = pi_history(g, sigma, s1, tau, psi)
                if not hist.consistent_with(s2):
                    continue
                if sigma.times[s2][v] != tau or _position(g, sigma, s2, v) != psi:
                    report.add(
                        "pi-dynamic",
                        f"{v} at (t={tau}, pos={psi}) in {s1.bits()} with ordered history "
                        f"{hist.bits() or 'λ'} consistent with {s2.bits()}, but at "
                        f"(t={sigma.times[s2][v]}, pos={_position(g, sigma, s2, v)}) there",
                        s1=s1.bits(), s2=s2.bits(), v=v, tau=tau, psi=psi,
                    )
    # Consequence of position-strict histories: a scenario's first observation,
    # wherever it is also present, must be first there too (same time, position 1).
    for s1 in scenarios:
        firsts = [v for v, k in sigma.positions[s1].items() if k == 1]
        if not firsts:
            continue
        first = firsts[0]
        tau = sigma.times[s1][first]
        for s2 in scenarios:
            if s1 == s2 or first not in present_nodes(g, s2):
                continue
            if sigma.times[s2][first] != tau or sigma.positions[s2].get(first) != 1:
                report.add(
                    "first-observation",
                    f"{first} is first (t={tau}) in {s1.bits()} but not in {s2.bits()}: "
                    f"no common first observation",
                    s1=s1.bits(), s2=s2.bits(), node=first, tau=tau,
                )
    return report
