"""Fixpoint kernels for hyperarc scheduling.

The solver repeatedly lifts node values to the largest min-over-heads bound
among the hyperarcs they tail, until either nothing is violated (least
fixpoint, a feasible schedule) or values pump past the divergence threshold.
The worklist holds affected tail nodes, FIFO over insertion order, so runs
are deterministic and certificates reproducible.

This is the one hot loop of the package: the default kernel is numba-jitted
over int64 arrays, with a pure-Python arbitrary-precision twin used when
numba is unavailable, when the env flag CSTNDC_NO_NUMBA is set, or when the
instance's certified value bound does not fit in int64 (values may never
wrap silently). Both kernels process the worklist in the same order and
return identical results whenever the int64 path is legal.
"""

from __future__ import annotations

import os
from collections import deque

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


ENV_DISABLE = "CSTNDC_NO_NUMBA"

# Inside a run every value stays within [0, cap] and every candidate within
# [-W, cap + W] where cap = (n + m)·W + 1, so this preflight bound is exact.
_INT64_HEADROOM = 2**62


def numba_enabled() -> bool:
    return HAS_NUMBA and not os.environ.get(ENV_DISABLE)


def fits_int64(n_nodes: int, n_arcs: int, weight_bound: int) -> bool:
    return (n_nodes + n_arcs + 1) * weight_bound + 1 < _INT64_HEADROOM


def select_kernel(n_nodes: int, n_arcs: int, weight_bound: int) -> str:
    if numba_enabled() and fits_int64(n_nodes, n_arcs, weight_bound):
        return "numba"
    return "python"


def _lift_python(out_ptr, arc_ptr, head_node, head_w, dep_ptr, dep_node, cap):
    n = len(out_ptr) - 1
    val = [0] * n
    in_queue = [True] * n
    queue = deque(range(n))
    while queue:
        t = queue.popleft()
        in_queue[t] = False
        new = val[t]
        for a in range(out_ptr[t], out_ptr[t + 1]):
            lo, hi = arc_ptr[a], arc_ptr[a + 1]
            bound = val[head_node[lo]] - head_w[lo]
            for i in range(lo + 1, hi):
                c = val[head_node[i]] - head_w[i]
                if c < bound:
                    bound = c
            if bound > new:
                new = bound
        # Clamp before comparing: a saturated node must never re-trigger.
        if new > cap:
            new = cap
        if new > val[t]:
            val[t] = new
            for j in range(dep_ptr[t], dep_ptr[t + 1]):
                d = dep_node[j]
                if not in_queue[d]:
                    in_queue[d] = True
                    queue.append(d)
    return val


@njit(cache=True)
def _lift_numba(out_ptr, arc_ptr, head_node, head_w, dep_ptr, dep_node, cap):  # pragma: no cover - jitted
    n = out_ptr.shape[0] - 1
    val = np.zeros(n, dtype=np.int64)
    in_queue = np.ones(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    for t in range(n):
        queue[t] = t
    qhead = 0
    qcount = n
    while qcount > 0:
        t = queue[qhead]
        qhead += 1
        if qhead == n:
            qhead = 0
        qcount -= 1
        in_queue[t] = False
        new = val[t]
        for a in range(out_ptr[t], out_ptr[t + 1]):
            lo = arc_ptr[a]
            hi = arc_ptr[a + 1]
            bound = val[head_node[lo]] - head_w[lo]
            for i in range(lo + 1, hi):
                c = val[head_node[i]] - head_w[i]
                if c < bound:
                    bound = c
            if bound > new:
                new = bound
        if new > cap:
            new = cap
        if new > val[t]:
            val[t] = new
            for j in range(dep_ptr[t], dep_ptr[t + 1]):
                d = dep_node[j]
                if not in_queue[d]:
                    in_queue[d] = True
                    qtail = qhead + qcount
                    if qtail >= n:
                        qtail -= n
                    queue[qtail] = d
                    qcount += 1
    return val


def run_lifting(out_ptr, arc_ptr, head_node, head_w, dep_ptr, dep_node, cap, kernel: str) -> list[int]:
    """Run the saturating lift-to-fixpoint loop with the chosen kernel.

    Arcs are grouped by tail: node t owns arcs out_ptr[t]..out_ptr[t+1], arc a
    owns head slots arc_ptr[a]..arc_ptr[a+1]. dep_* lists, per node, the
    tails whose bounds can rise when that node's value does.
    """
    if kernel == "numba":
        as_arr = lambda xs: np.asarray(xs, dtype=np.int64)
        val = _lift_numba(
            as_arr(out_ptr), as_arr(arc_ptr), as_arr(head_node), as_arr(head_w),
            as_arr(dep_ptr), as_arr(dep_node), np.int64(cap),
        )
        return [int(x) for x in val]
    if kernel == "python":
        return _lift_python(out_ptr, arc_ptr, head_node, head_w, dep_ptr, dep_node, cap)
    raise ValueError(f"unknown kernel {kernel!r}")
