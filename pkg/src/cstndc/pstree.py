"""The independent decision path for ordered dynamic consistency.

A ps-tree fixes, scenario by scenario, the order in which observations are
made: each node names a letter, its outgoing arcs carry the two outcomes, and
walking a complete scenario through the tree spells out that scenario's
observation sequence. A tree is coherent with a network when every walk
observes exactly the observation events present under the walking scenario.

Per tree, ordered consistency reduces to one hyperarc network over the
scenario expansion (reaction bounds for the non-observation events, plus
arcs tying each tree letter's observation to its parent and equalizing it
across the scenarios that reach it). Enumerating all coherent trees gives a
doubly-exponential but fully independent oracle used to cross-validate the
relaxation pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .hytn import Feasible, Hyperarc, Hytn, solve_hytn
from .labels import Scenario
from .network import (
    Cstn,
    difference_set,
    present_nodes,
    present_observations,
    restrict,
    scenario_node_id,
)
from .strategy import PiExecStrategy, SelfValidationError, validate_pi_es


class PsTreeStructureError(ValueError):
    """Tree violates its shape rules (unknown letter, repeated letter...)."""


class IncoherentTreeError(ValueError):
    """Tree does not realize the observation sets of the network."""


class CapExceededError(ValueError):
    """Letter count beyond the exhaustive-search cap."""


@dataclass(frozen=True)
class PsTree:
    """Rooted binary observation-order tree; children keyed by outcome bit."""

    letter: str
    zero: Optional["PsTree"] = None
    one: Optional["PsTree"] = None

    def child(self, bit: bool) -> Optional["PsTree"]:
        return self.one if bit else self.zero

    def is_leaf(self) -> bool:
        return self.zero is None and self.one is None

    def render(self) -> str:
        if self.is_leaf():
            return self.letter
        left = self.zero.render() if self.zero else ""
        right = self.one.render() if self.one else ""
        return f"{self.letter}({left},{right})"

    def __str__(self) -> str:
        return self.render()


def parse_ps_tree(text: str) -> PsTree:
    """Inverse of render: ``letter(zero-subtree,one-subtree)``, leaf = bare letter."""
    text = text.replace(" ", "")
    tree, rest = _parse_tree(text)
    if rest:
        raise PsTreeStructureError(f"trailing text {rest!r} after tree")
    return tree


def _parse_tree(text: str) -> tuple[PsTree, str]:
    i = 0
    while i < len(text) and (text[i].isalnum() or text[i] == "_"):
        i += 1
    if i == 0:
        raise PsTreeStructureError(f"expected a letter name at {text!r}")
    letter, rest = text[:i], text[i:]
    if not rest.startswith("("):
        return PsTree(letter), rest
    rest = rest[1:]
    zero = one = None
    if not rest.startswith(","):
        zero, rest = _parse_tree(rest)
    if not rest.startswith(","):
        raise PsTreeStructureError("expected ',' between subtrees")
    rest = rest[1:]
    if not rest.startswith(")"):
        one, rest = _parse_tree(rest)
    if not rest.startswith(")"):
        raise PsTreeStructureError("expected ')' closing subtree list")
    return PsTree(letter, zero, one), rest[1:]


def _validate_structure(t: PsTree, letters: frozenset[str], seen: frozenset[str] = frozenset()) -> None:
    if t.letter not in letters:
        raise PsTreeStructureError(f"tree letter {t.letter!r} is not a network letter")
    if t.letter in seen:
        raise PsTreeStructureError(f"letter {t.letter!r} repeats along a root-to-leaf path")
    below = seen | {t.letter}
    for child in (t.zero, t.one):
        if child is not None:
            _validate_structure(child, letters, below)


def walk(t: PsTree | None, s: Scenario) -> list[str]:
    """Letters observed, in order, when scenario s walks the tree."""
    out = []
    node = t
    while node is not None:
        out.append(node.letter)
        node = node.child(s.value(node.letter))
    return out


def check_coherence(t: PsTree, g: Cstn) -> bool:
    """Every scenario's walk must observe exactly its present observation events."""
    _validate_structure(t, frozenset(g.letters))
    for s in g.scenarios():
        observed = walk(t, s)
        expected = {g.observed_letter(v) for v in present_observations(g, s)}
        if set(observed) != expected:
            return False
    return True


@dataclass(frozen=True, eq=False)
class PiHytnEncoding:
    hytn: Hytn
    origin: dict[str, tuple[str, Scenario]]


def construct_pi_hytn(g: Cstn, t: PsTree | None) -> PiHytnEncoding:
    """Expansion + zero-reaction bounds + the tree's ordering/equality arcs.

    A ``None`` tree is the degenerate order for networks that never observe
    anything (no letters, or no observation present in any scenario).
    """
    if t is None:
        if any(present_observations(g, s) for s in g.scenarios()):
            raise IncoherentTreeError("a tree is required when observations are present")
    elif not check_coherence(t, g):
        raise IncoherentTreeError(f"tree {t} is not coherent with the network")
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
            arcs.append(Hyperarc.make(scenario_node_id(u, s), {scenario_node_id(v, s): w}))
    observation = set(g.observers.values())
    for s1 in scenarios:
        in_s1 = set(present[s1])
        for s2 in scenarios:
            if s1 == s2:
                continue
            delta = sorted(difference_set(g, s1, s2))
            for u in present[s2]:
                if u not in in_s1 or u in observation:
                    continue
                heads = {scenario_node_id(u, s2): 0}
                for v in delta:
                    heads[scenario_node_id(v, s1)] = 0
                arcs.append(Hyperarc.make(scenario_node_id(u, s1), heads))
    arcs.extend(_tree_arcs(g, t, scenarios))
    return PiHytnEncoding(Hytn(tuple(nodes), tuple(arcs)), origin)


def _tree_arcs(g: Cstn, t: PsTree | None, scenarios: list[Scenario]) -> list[Hyperarc]:
    # Per tree node x (path bits s_x): the observation of x's letter happens at
    # one common time across all scenarios extending s_x, and no earlier than
    # the child observation each such scenario goes on to make.
    arcs: list[Hyperarc] = []
    if t is None:
        return arcs
    stack: list[tuple[PsTree, dict[str, bool]]] = [(t, {})]
    while stack:
        x, path = stack.pop()
        subsuming = [s for s in scenarios if all(s.value(p) == b for p, b in path.items())]
        op = g.observers[x.letter]
        for s1 in subsuming:
            child = x.child(s1.value(x.letter))
            if child is not None:
                child_op = g.observers[child.letter]
                arcs.append(
                    Hyperarc.make(scenario_node_id(child_op, s1), {scenario_node_id(op, s1): 0})
                )
        for s1 in subsuming:
            for s2 in subsuming:
                if s1 != s2:
                    arcs.append(
                        Hyperarc.make(scenario_node_id(op, s1), {scenario_node_id(op, s2): 0})
                    )
        for bit in (True, False):
            child = x.child(bit)
            if child is not None:
                stack.append((child, {**path, x.letter: bit}))
    return arcs


def check_pi_dc_on_tree(g: Cstn, t: PsTree | None) -> PiExecStrategy | None:
    """Decide ordered consistency for one fixed observation-order tree."""
    if any(c.u == c.v and c.w < 0 for c in g.constraints):
        return None
    enc = construct_pi_hytn(g, t)
    result = solve_hytn(enc.hytn)
    if not isinstance(result, Feasible):
        return None
    times: dict[Scenario, dict[str, int]] = {s: {} for s in g.scenarios()}
    for nid, (v, s) in enc.origin.items():
        times[s][v] = result.schedule[nid]
    positions = {
        s: {g.observers[p]: i + 1 for i, p in enumerate(walk(t, s))}
        for s in g.scenarios()
    }
    sigma = PiExecStrategy(times, positions)
    report = validate_pi_es(g, sigma)
    if not report.ok:
        raise SelfValidationError(
            f"tree-derived strategy failed validation: {report.violations[0].message}"
        )
    return sigma


def enumerate_c_ps_trees(g: Cstn, max_letters: int = 4) -> Iterator[PsTree]:
    """All coherent trees, each exactly once, letters sorted at every choice point."""
    if len(g.letters) > max_letters:
        raise CapExceededError(
            f"{len(g.letters)} letters exceed the enumeration cap {max_letters}"
        )
    if not g.letters:
        return
    scenarios = g.scenarios()
    present = {s: {g.observed_letter(v) for v in present_observations(g, s)} for s in scenarios}
    yield from (t for t in _subtrees(g, scenarios, present, {}, frozenset()) if t is not None)


def _subtrees(g, scenarios, present, path: dict, used: frozenset) -> list[PsTree | None]:
    covered = [s for s in scenarios if all(s.value(p) == b for p, b in path.items())]
    remaining = [present[s] - used for s in covered]
    if all(not r for r in remaining):
        return [None]
    if any(not r for r in remaining):
        return []  # some covered scenario is done observing, others are not
    out: list[PsTree | None] = []
    for q in sorted(frozenset.intersection(*map(frozenset, remaining))):
        zeros = _subtrees(g, scenarios, present, {**path, q: False}, used | {q})
        if not zeros:
            continue
        ones = _subtrees(g, scenarios, present, {**path, q: True}, used | {q})
        for z in zeros:
            for o in ones:
                out.append(PsTree(q, z, o))
    return out


def check_pi_dc_exhaustive(
    g: Cstn, max_letters: int = 4
) -> tuple[PiExecStrategy, PsTree | None] | None:
    """Try every coherent tree; YES returns the first witness in enumeration order.

    Undefined (returns NO) on networks where some scenario retains no
    observation event while another does: no tree can be coherent there.
    Networks that never observe anything are decided directly on their
    restriction with a ``None`` witness tree.
    """
    if not any(present_observations(g, s) for s in g.scenarios()):
        sigma = check_pi_dc_on_tree(g, None)
        return None if sigma is None else (sigma, None)
    for t in enumerate_c_ps_trees(g, max_letters=max_letters):
        sigma = check_pi_dc_on_tree(g, t)
        if sigma is not None:
            return sigma, t
    return None
