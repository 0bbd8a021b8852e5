#!/usr/bin/env python3
"""Benchmark the jitted solver kernel against the pure-Python fallback.

Runs the same instances through both kernels, checks they produce identical
results, and prints a timing table. The heavyweight divergence pump (the
relaxed box network at the threshold reaction time) is numba-only by default
because the Python kernel needs minutes there; pass --full to include it.

Warm-up solves exclude JIT compilation from the timings.
"""

import argparse
import random
import time

from cstndc import Feasible, Stn, gamma_box, gamma_pi, stn_consistency
from cstndc.epsdc import build_eps_hytn, epsilon_hat
from cstndc.hytn import solve_hytn
from cstndc.lifting import HAS_NUMBA
from cstndc.reduction import relax_cstn


def random_stn(rng, n, density=3, w=20):
    nodes = tuple(f"v{i}" for i in range(n))
    arcs = tuple(
        (*rng.sample(nodes, 2), rng.randint(-w, w)) for _ in range(density * n)
    )
    return Stn(nodes, arcs)


def instances(full):
    rng = random.Random(99)
    out = [
        ("random stn n=50 x100", [random_stn(rng, 50) for _ in range(100)], True),
        ("random stn n=200 x20", [random_stn(rng, 200) for _ in range(20)], True),
    ]
    box = gamma_box()
    dc_enc = build_eps_hytn(box, epsilon_hat(box))
    out.append(("box dc encoding (refuted pump)", [dc_enc.hytn], True))
    pi_enc = build_eps_hytn(gamma_pi(), epsilon_hat(gamma_pi()))
    out.append(("pi dc encoding", [pi_enc.hytn], True))
    relaxed = relax_cstn(box)
    big = build_eps_hytn(relaxed.cstn, epsilon_hat(relaxed.cstn))
    out.append(("relaxed box encoding (heavy pump)", [big.hytn], full))
    return out


def solve_all(batch, kernel):
    results = []
    for item in batch:
        if isinstance(item, Stn):
            results.append(stn_consistency(item, kernel=kernel))
        else:
            results.append(solve_hytn(item, kernel=kernel))
    return results


def time_kernel(batch, kernel, repeat=3):
    best = float("inf")
    results = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        results = solve_all(batch, kernel)
        best = min(best, time.perf_counter() - t0)
    return best, results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="run the python kernel on the heavy pump too")
    args = parser.parse_args()

    if not HAS_NUMBA:
        print("numba unavailable: timing the python kernel only")
    # warm-up compile
    stn_consistency(Stn(("a", "b"), (("a", "b", 1), ("b", "a", -1))))

    print(f"{'instance':38} {'numba':>10} {'python':>10} {'speedup':>8}")
    for name, batch, python_too in instances(args.full):
        row = f"{name:38}"
        t_numba = None
        if HAS_NUMBA:
            t_numba, r_numba = time_kernel(batch, "numba")
            row += f" {t_numba:9.3f}s"
        else:
            row += f" {'-':>10}"
        if python_too:
            t_py, r_py = time_kernel(batch, "python", repeat=1)
            row += f" {t_py:9.3f}s"
            if HAS_NUMBA:
                for a, b in zip(r_numba, r_py):
                    assert type(a) is type(b)
                    if isinstance(a, Feasible):
                        assert a.schedule == b.schedule
                    else:
                        assert a.certificate == b.certificate
                row += f" {t_py / t_numba:7.1f}x"
        else:
            row += f" {'(skipped)':>10}"
        print(row)


if __name__ == "__main__":
    main()
