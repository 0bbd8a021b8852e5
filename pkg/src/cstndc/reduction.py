"""Ordered dynamic consistency by reduction to plain dynamic consistency.

Relax every weight by |V|·γ for γ = 1/(|Σ|·|V|²+1): the original network has
an ordered strategy exactly when the relaxed one is dynamically consistent.
A dynamic strategy for the relaxed network is turned back into an ordered
integral one by subtracting a shift η chosen so that no value sits within
|V|·γ above an integer, then flooring; positions follow the pre-floor order.
All arithmetic on this path is exact rational — the interval argument the
shift relies on breaks under floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .epsdc import check_dc
from .labels import Scenario
from .network import Cstn, LabelledConstraint, present_observations
from .strategy import (
    ExecStrategy,
    PiExecStrategy,
    SelfValidationError,
    validate_pi_es,
)


@dataclass(frozen=True, eq=False)
class RelaxedCstn:
    """Relaxed network in integral form: weight w becomes scale·w + |V|."""

    cstn: Cstn
    gamma: Fraction
    scale: int


def relax_cstn(g: Cstn) -> RelaxedCstn:
    """Add |V|·γ of slack to every constraint, scaled integral by γ's denominator."""
    for c in g.constraints:
        if isinstance(c.w, bool) or not isinstance(c.w, int):
            raise TypeError("relaxation needs integer weights")
    n = len(g.nodes)
    scale = (2 ** len(g.letters)) * n * n + 1
    gamma = Fraction(1, scale)
    relaxed = tuple(
        LabelledConstraint(c.u, c.v, scale * c.w + n, c.ell) for c in g.constraints
    )
    return RelaxedCstn(
        Cstn(g.nodes, g.letters, dict(g.node_labels), dict(g.observers), relaxed),
        gamma,
        scale,
    )


def eta_is_valid(values, eta: Fraction, gap: Fraction) -> bool:
    """No value − eta may lie within [0, gap) above an integer."""
    return all((x - eta) % 1 >= gap for x in values)


def select_eta(sigma_prime: ExecStrategy, relaxed: RelaxedCstn) -> Fraction:
    """Smallest multiple of γ no schedule value sits within |V|·γ above, mod 1.

    Each schedule value rules out one circular interval of length |V|·γ in
    [0,1), and an interval that short can cover at most |V| multiples of γ, so
    with |Σ|·|V| values at most scale−1 of the scale multiples are ruled out:
    a valid candidate always exists.
    """
    g = relaxed.cstn
    gamma = relaxed.gamma
    gap = len(g.nodes) * gamma
    values = [
        Fraction(t) / relaxed.scale
        for times in sigma_prime.schedules.values()
        for t in times.values()
    ]
    for j in range(relaxed.scale):
        eta = j * gamma
        if eta_is_valid(values, eta, gap):
            return eta
    raise SelfValidationError("no valid shift exists; the interval-measure bound is violated")


def round_to_pi_es(sigma_prime: ExecStrategy, eta: Fraction, g: Cstn, scale: int = 1) -> PiExecStrategy:
    """Shift by −η, floor to the integer grid, rank observations by pre-floor order.

    ``scale`` divides the incoming times first (pass the relaxation scale when
    the strategy still carries the relaxed network's integral units). The
    result is normalized to minimum time 0; ordered dynamicity is invariant
    under a uniform integer shift.
    """
    times: dict[Scenario, dict[str, int]] = {}
    shifted: dict[Scenario, dict[str, Fraction]] = {}
    for s, sched in sigma_prime.schedules.items():
        shifted[s] = {v: Fraction(t) / scale - eta for v, t in sched.items()}
        times[s] = {v: math.floor(x) for v, x in shifted[s].items()}
    low = min((t for sched in times.values() for t in sched.values()), default=0)
    times = {s: {v: t - low for v, t in sched.items()} for s, sched in times.items()}
    return PiExecStrategy(times, _induced_positions(g, shifted))


def _induced_positions(g: Cstn, shifted) -> dict[Scenario, dict[str, int]]:
    """Observation ranks the shifted schedule induces, consistent across scenarios.

    Positions follow schedule time order, but a time tie is broken by picking,
    at each rank, an observation that is present in every scenario still
    observing and time-minimal in each (a letter observed differently earlier
    splits the scenarios first). Breaking ties by any fixed node order instead
    can rank a conditionally-present observation ahead of the always-present
    one it ties with, which no ordered strategy may do.
    """
    positions: dict[Scenario, dict[str, int]] = {s: {} for s in shifted}
    _assign_positions(g, shifted, list(shifted), frozenset(), 1, positions)
    return positions


def _assign_positions(g, shifted, active, used, next_pos, positions) -> None:
    remaining: dict[Scenario, dict[str, str]] = {}
    for s in active:
        rem = {
            g.observed_letter(v): v
            for v in present_observations(g, s)
            if g.observed_letter(v) not in used
        }
        if rem:
            remaining[s] = rem
    if not remaining:
        return
    live = list(remaining)
    common = set.intersection(*(set(rem) for rem in remaining.values()))
    candidates = [
        p
        for p in sorted(common)
        if all(
            shifted[s][remaining[s][p]] == min(shifted[s][v] for v in remaining[s].values())
            for s in live
        )
    ]
    if not candidates:
        raise SelfValidationError(
            "no observation is first in every remaining scenario; "
            "the schedule induces no consistent observation order"
        )
    p = candidates[0]
    for s in live:
        positions[s][g.observers[p]] = next_pos
    for bit in (False, True):
        branch = [s for s in live if s.value(p) == bit]
        if branch:
            _assign_positions(g, shifted, branch, used | {p}, next_pos + 1, positions)


def check_pi_dc(g: Cstn) -> PiExecStrategy | None:
    """Ordered-dynamic-consistency check; YES carries a validated strategy."""
    if not g.nodes:
        empty = {s: {} for s in g.scenarios()}
        return PiExecStrategy(empty, {s: {} for s in g.scenarios()})
    relaxed = relax_cstn(g)
    sigma_prime = check_dc(relaxed.cstn)
    if sigma_prime is None:
        return None
    eta = select_eta(sigma_prime, relaxed)
    sigma = round_to_pi_es(sigma_prime, eta, g, scale=relaxed.scale)
    report = validate_pi_es(g, sigma)
    if not report.ok:
        raise SelfValidationError(
            f"rounded strategy failed validation: {report.violations[0].message}"
        )
    return sigma
