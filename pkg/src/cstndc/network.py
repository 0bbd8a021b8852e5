"""Conditional temporal network model.

A network couples events and difference constraints with propositional labels
telling in which scenarios each of them is required, plus one observation
event per letter that reveals the letter's truth value at execution time.
This module holds the data model, the well-definedness checks, scenario
restriction/expansion and difference sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .labels import EMPTY_LABEL, Label, Scenario, all_scenarios


@dataclass(frozen=True)
class Violation:
    """One rule violation with enough witness data to be diagnosable."""

    kind: str
    message: str
    details: tuple[tuple[str, str], ...] = ()

    @classmethod
    def make(cls, kind: str, message: str, **details) -> "Violation":
        return cls(kind, message, tuple(sorted((k, str(v)) for k, v in details.items())))


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str, **details) -> None:
        self.violations.append(Violation.make(kind, message, **details))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)


@dataclass(frozen=True)
class LabelledConstraint:
    """Difference constraint v − u ≤ w, required in scenarios satisfying ell."""

    u: str
    v: str
    w: int
    ell: Label = EMPTY_LABEL

    def __post_init__(self) -> None:
        if isinstance(self.w, bool) or not isinstance(self.w, int):
            raise TypeError(f"constraint weight must be an integer, got {self.w!r}")


@dataclass(frozen=True, eq=False)
class Stn:
    """Plain difference-constraint network: arcs (u, v, w) meaning v − u ≤ w."""

    nodes: tuple[str, ...]
    arcs: tuple[tuple[str, str, int], ...]

    def __post_init__(self) -> None:
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ValueError("duplicate node names")
        for u, v, w in self.arcs:
            if u not in known or v not in known:
                raise ValueError(f"arc ({u}, {v}, {w}) references an unknown node")
            if isinstance(w, bool) or not isinstance(w, int):
                raise TypeError(f"arc weight must be an integer, got {w!r}")


@dataclass(frozen=True, eq=False)
class Cstn:
    """Labelled temporal network ⟨V, A, L, O, OV, P⟩."""

    nodes: tuple[str, ...]
    letters: tuple[str, ...]
    node_labels: Mapping[str, Label]
    observers: Mapping[str, str]
    constraints: tuple[LabelledConstraint, ...]

    def __post_init__(self) -> None:
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ValueError("duplicate node names")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("duplicate letters")
        labels = {v: self.node_labels.get(v, EMPTY_LABEL) for v in self.nodes}
        for v in self.node_labels:
            if v not in known:
                raise ValueError(f"label given for unknown node {v!r}")
        object.__setattr__(self, "node_labels", labels)
        if set(self.observers) != set(self.letters):
            raise ValueError("observers must map every letter exactly once")
        obs_nodes = list(self.observers.values())
        if len(set(obs_nodes)) != len(obs_nodes):
            raise ValueError("observers must be injective")
        for p, v in self.observers.items():
            if v not in known:
                raise ValueError(f"observer of {p!r} is the unknown node {v!r}")
        letter_set = set(self.letters)
        for lab in labels.values():
            if not lab.letters() <= letter_set:
                raise ValueError(f"node label {lab} uses letters outside the network")
        for c in self.constraints:
            if c.u not in known or c.v not in known:
                raise ValueError(f"constraint ({c.u}, {c.v}) references an unknown node")
            if not c.ell.letters() <= letter_set:
                raise ValueError(f"constraint label {c.ell} uses letters outside the network")

    def label_of(self, v: str) -> Label:
        return self.node_labels[v]

    def observation_nodes(self) -> tuple[str, ...]:
        """OV in letter order (sorted letter names)."""
        return tuple(self.observers[p] for p in sorted(self.letters))

    def observed_letter(self, v: str) -> str | None:
        for p, node in self.observers.items():
            if node == v:
                return p
        return None

    def is_observation(self, v: str) -> bool:
        return v in set(self.observers.values())

    def scenarios(self) -> list[Scenario]:
        return all_scenarios(self.letters)

    def max_weight(self) -> int:
        return max((abs(c.w) for c in self.constraints), default=0)


def wd_check(g: Cstn) -> ValidationReport:
    """Well-definedness: every violation of the three reasonability rules.

    WD1: a constraint's label subsumes both endpoint labels. WD2: a node whose
    label mentions p subsumes the observer's label and carries the zero arc
    scheduling the observer no later than the node. WD3: a constraint label
    mentioning p subsumes the observer's label.
    """
    report = ValidationReport()
    for c in g.constraints:
        for end in (c.u, c.v):
            if not c.ell.subsumes(g.label_of(end)):
                report.add(
                    "wd1",
                    f"constraint ({c.v} - {c.u} <= {c.w}, {c.ell or 'λ'}) does not subsume "
                    f"label of endpoint {end}",
                    u=c.u, v=c.v, w=c.w, label=c.ell, endpoint=end,
                )
    for u in g.nodes:
        lu = g.label_of(u)
        for p in sorted(lu.letters()):
            op = g.observers[p]
            if not lu.subsumes(g.label_of(op)):
                report.add(
                    "wd2-subsumption",
                    f"label of {u} mentions {p} but does not subsume label of observer {op}",
                    node=u, letter=p, observer=op,
                )
            arc = LabelledConstraint(u=u, v=op, w=0, ell=lu)
            if arc not in g.constraints:
                report.add(
                    "wd2-arc",
                    f"label of {u} mentions {p} but the arc ({op} - {u} <= 0, {lu or 'λ'}) is missing",
                    node=u, letter=p, observer=op,
                )
    for c in g.constraints:
        for p in sorted(c.ell.letters()):
            op = g.observers[p]
            if not c.ell.subsumes(g.label_of(op)):
                report.add(
                    "wd3",
                    f"constraint label {c.ell} mentions {p} but does not subsume label of observer {op}",
                    u=c.u, v=c.v, letter=p, observer=op,
                )
    return report


def _require_complete(g: Cstn, s: Scenario) -> None:
    if s.letters() != frozenset(g.letters):
        raise ValueError(f"scenario over {sorted(s.letters())} is not complete for letters {sorted(g.letters)}")


def present_nodes(g: Cstn, s: Scenario) -> tuple[str, ...]:
    """V⁺_s: nodes whose labels the scenario satisfies, in declaration order."""
    _require_complete(g, s)
    return tuple(v for v in g.nodes if s.satisfies(g.label_of(v)))


def present_observations(g: Cstn, s: Scenario) -> tuple[str, ...]:
    """OV⁺_s in letter order."""
    present = set(present_nodes(g, s))
    return tuple(v for v in g.observation_nodes() if v in present)


def restrict(g: Cstn, s: Scenario) -> Stn:
    """Scenario restriction: the plain network a single scenario induces."""
    nodes = present_nodes(g, s)
    arcs = sorted({(c.u, c.v, c.w) for c in g.constraints if s.satisfies(c.ell)})
    return Stn(nodes=nodes, arcs=tuple(arcs))


ScenarioNode = tuple[str, Scenario]


def expand(g: Cstn) -> tuple[tuple[ScenarioNode, ...], tuple[tuple[ScenarioNode, ScenarioNode, int], ...]]:
    """Disjoint union of every scenario restriction, nodes tagged by scenario."""
    nodes: list[ScenarioNode] = []
    arcs: list[tuple[ScenarioNode, ScenarioNode, int]] = []
    for s in g.scenarios():
        stn = restrict(g, s)
        nodes.extend((v, s) for v in stn.nodes)
        arcs.extend(((u, s), (v, s), w) for u, v, w in stn.arcs)
    return tuple(nodes), tuple(arcs)


def difference_set(g: Cstn, s1: Scenario, s2: Scenario) -> frozenset[str]:
    """Observation events present under s1 whose letters s1 and s2 disagree on.

    Deliberately asymmetric: membership is tested in OV⁺ of the first
    scenario only.
    """
    _require_complete(g, s1)
    _require_complete(g, s2)
    out = set()
    for v in present_observations(g, s1):
        p = g.observed_letter(v)
        if s1.value(p) != s2.value(p):
            out.add(v)
    return frozenset(out)


def scenario_node_id(v: str, s: Scenario) -> str:
    """Stable string id for a scenario-tagged event copy."""
    return f"{v}@{s.bits()}"
