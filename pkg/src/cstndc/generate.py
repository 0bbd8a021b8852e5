"""Seeded random generator of well-defined networks.

Instances are built so the well-definedness rules hold by construction: node
labels only ever subsume the labels of the observers they mention, the
scheduling arc each labelled node owes to its observers is added explicitly,
and constraint labels start from the conjunction of their endpoint labels and
are closed under the observer labels of every letter they mention. At most
one observer carries a (single-literal) label, over a letter whose own
observer is unlabelled, so every scenario retains at least one observation.
"""

from __future__ import annotations

import random

from .labels import EMPTY_LABEL, Label
from .network import Cstn, LabelledConstraint, wd_check

_LETTER_POOL = ("p", "q", "r", "s")


def random_cstn(
    seed: int,
    max_letters: int = 2,
    max_nodes: int = 5,
    max_weight: int = 3,
    max_extra_constraints: int = 6,
) -> Cstn:
    """Deterministic well-defined network for a seed; raises if a rule slips through."""
    rng = random.Random(seed)
    n_letters = rng.randint(1, max_letters)
    letters = _LETTER_POOL[:n_letters]
    n_nodes = rng.randint(n_letters + 1, max(max_nodes, n_letters + 1))
    nodes = tuple(f"n{i}" for i in range(n_nodes))
    observers = {p: nodes[i] for i, p in enumerate(letters)}
    observer_nodes = set(observers.values())

    labels: dict[str, Label] = {v: EMPTY_LABEL for v in nodes}
    if n_letters >= 2 and rng.random() < 0.3:
        # One labelled observer keeps scenario-dependent observation sets in
        # the mix; its label letter stays observed by an unlabelled node.
        target, source = rng.sample(letters, 2)
        labels[observers[target]] = Label(frozenset({(source, rng.random() < 0.5)}))
    for v in nodes:
        if v in observer_nodes or rng.random() >= 0.4:
            continue
        p = rng.choice(letters)
        lit = Label(frozenset({(p, rng.random() < 0.5)}))
        closed = _close_under_observers(lit, labels, observers)
        if closed is not None:
            labels[v] = closed

    constraints: list[LabelledConstraint] = []
    for v in nodes:
        for p in sorted(labels[v].letters()):
            constraints.append(LabelledConstraint(v, observers[p], 0, labels[v]))
    for _ in range(rng.randint(1, max_extra_constraints)):
        u, v = rng.sample(nodes, 2)
        w = rng.randint(-max_weight, max_weight)
        if not labels[u].consistent_with(labels[v]):
            continue
        ell = labels[u].conjoin(labels[v])
        if rng.random() < 0.4:
            p = rng.choice(letters)
            extra = Label(frozenset({(p, rng.random() < 0.5)}))
            if ell.consistent_with(extra):
                ell = ell.conjoin(extra)
        ell = _close_under_observers(ell, labels, observers)
        if ell is None:
            continue
        constraints.append(LabelledConstraint(u, v, w, ell))

    g = Cstn(nodes, letters, labels, observers, tuple(constraints))
    report = wd_check(g)
    if not report.ok:
        raise AssertionError(
            f"generator produced an invalid network (seed {seed}): {report.violations[0].message}"
        )
    return g


def _close_under_observers(label: Label, labels, observers) -> Label | None:
    """Extend a label with observer labels for every letter it mentions.

    Iterates to a fixpoint (folded-in labels can mention new letters);
    returns None when the closure is contradictory.
    """
    current = label
    while True:
        merged = current
        for p in sorted(current.letters()):
            obs_label = labels[observers[p]]
            if not merged.consistent_with(obs_label):
                return None
            merged = merged.conjoin(obs_label)
        if merged == current:
            return current
        current = merged
