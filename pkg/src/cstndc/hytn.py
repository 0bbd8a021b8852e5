"""Hyperarc temporal networks and their consistency solver.

A hyperarc constrains its tail to be at least the minimum over its heads of
(head time − head weight); single-head hyperarcs are ordinary difference
constraints. The solver lifts node values monotonically from zero to the least
fixpoint. Values are integral and, on consistent instances, bounded by
T = (|V| + |A|)·W; an instance is refuted exactly when some value pumps past
T, and the certificate is the set of nodes that did.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from . import lifting
from .network import Stn


class HytnStructureError(ValueError):
    """Structurally invalid hyperarc network (empty heads, unknown node...)."""


@dataclass(frozen=True)
class Hyperarc:
    tail: str
    heads: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if not self.heads:
            raise HytnStructureError(f"hyperarc with tail {self.tail!r} has no heads")
        names = [v for v, _ in self.heads]
        if len(set(names)) != len(names):
            raise HytnStructureError(f"hyperarc with tail {self.tail!r} repeats a head")
        if self.tail in names:
            raise HytnStructureError(f"hyperarc tail {self.tail!r} appears among its heads")
        for v, w in self.heads:
            if isinstance(w, bool) or not isinstance(w, int):
                raise HytnStructureError(f"head weight must be an integer, got {w!r}")

    @classmethod
    def make(cls, tail: str, heads: Mapping[str, int] | Iterable[tuple[str, int]]) -> "Hyperarc":
        return cls(tail, tuple(sorted(dict(heads).items())))

    def size(self) -> int:
        return len(self.heads) + 1


@dataclass(frozen=True, eq=False)
class Hytn:
    nodes: tuple[str, ...]
    hyperarcs: tuple[Hyperarc, ...]

    def __post_init__(self) -> None:
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise HytnStructureError("duplicate node names")
        for a in self.hyperarcs:
            if a.tail not in known:
                raise HytnStructureError(f"hyperarc tail {a.tail!r} is not a node")
            for v, _ in a.heads:
                if v not in known:
                    raise HytnStructureError(f"hyperarc head {v!r} is not a node")

    def size(self) -> int:
        """Encoding size m_A: total endpoint count over all hyperarcs."""
        return sum(a.size() for a in self.hyperarcs)

    def weight_bound(self) -> int:
        return max((abs(w) for a in self.hyperarcs for _, w in a.heads), default=0)

    def value_bound(self) -> int:
        """T = (|V| + |A|)·W, the certified ceiling of feasible least values."""
        return (len(self.nodes) + len(self.hyperarcs)) * self.weight_bound()


@dataclass(frozen=True)
class Feasible:
    schedule: dict[str, int]

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class Inconsistent:
    certificate: frozenset[str]

    @property
    def feasible(self) -> bool:
        return False


SolveResult = Union[Feasible, Inconsistent]


def _check_schedule(h: Hytn, times: Mapping[str, int]) -> None:
    for a in h.hyperarcs:
        bound = min(times[v] - w for v, w in a.heads)
        if times[a.tail] < bound:
            raise AssertionError(
                f"solver returned a schedule violating hyperarc at tail {a.tail!r}"
            )


def solve_hytn(h: Hytn, kernel: str | None = None) -> SolveResult:
    """Decide consistency; feasible schedules are integral, >= 0 and <= T.

    ``kernel`` forces "numba" or "python"; by default the numba kernel runs
    whenever it is available and the instance provably fits int64.
    """
    if not h.hyperarcs:
        return Feasible({v: 0 for v in h.nodes})
    index = {v: i for i, v in enumerate(h.nodes)}
    by_tail: list[list[Hyperarc]] = [[] for _ in h.nodes]
    for a in h.hyperarcs:
        by_tail[index[a.tail]].append(a)
    out_ptr = [0]
    arc_ptr = [0]
    head_node = []
    head_w = []
    dependents: list[set[int]] = [set() for _ in h.nodes]
    for ti, arcs in enumerate(by_tail):
        for a in arcs:
            for v, w in a.heads:
                vi = index[v]
                head_node.append(vi)
                head_w.append(w)
                dependents[vi].add(ti)
            arc_ptr.append(len(head_node))
        out_ptr.append(len(arc_ptr) - 1)
    dep_ptr = [0]
    dep_node = []
    for deps in dependents:
        dep_node.extend(sorted(deps))
        dep_ptr.append(len(dep_node))
    bound = h.value_bound()
    if kernel is None:
        kernel = lifting.select_kernel(len(h.nodes), len(h.hyperarcs), h.weight_bound())
    elif kernel == "numba" and not lifting.fits_int64(len(h.nodes), len(h.hyperarcs), h.weight_bound()):
        raise OverflowError("instance exceeds the int64-safe bound; use the python kernel")
    values = lifting.run_lifting(out_ptr, arc_ptr, head_node, head_w, dep_ptr, dep_node, bound + 1, kernel)
    exceeded = frozenset(v for v, i in index.items() if values[i] > bound)
    if exceeded:
        return Inconsistent(exceeded)
    schedule = {v: values[index[v]] for v in h.nodes}
    _check_schedule(h, schedule)
    return Feasible(schedule)


def stn_to_hytn(g: Stn) -> Hytn:
    """Each arc (u, v, w), i.e. v − u ≤ w, becomes the single-head hyperarc
    tail u, head {v: w} (tail must be at least head time − w)."""
    return Hytn(g.nodes, tuple(Hyperarc.make(u, {v: w}) for u, v, w in g.arcs))


def stn_consistency(g: Stn, kernel: str | None = None) -> SolveResult:
    arcs = []
    for u, v, w in g.arcs:
        if u == v:
            # v − u ≤ w with u == v is vacuous for w >= 0, absurd otherwise.
            if w < 0:
                return Inconsistent(frozenset({u}))
            continue
        arcs.append((u, v, w))
    return solve_hytn(stn_to_hytn(Stn(g.nodes, tuple(arcs))), kernel=kernel)
