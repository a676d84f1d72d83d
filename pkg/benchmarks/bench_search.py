#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Run from the repository root after an editable install:

    python benchmarks/bench_search.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from cycdec import _search_py
from cycdec.oracle import even_partitions

try:
    from cycdec import _speedups
except ImportError:
    _speedups = None


def _census(kernel, lam, v, u):
    total = lam * v * u
    counts = [lam] * (v * u)
    out = []
    for parts in even_partitions(total):
        out.append((parts, kernel.decide(v, u, counts, list(parts))[0]))
    return out


CASES = [
    ("decide K66 (6^6)", lambda k: k.decide(6, 6, [1] * 36, [6] * 6)),
    ("decide K66 (4^6,6,6)", lambda k: k.decide(6, 6, [1] * 36, [4] * 6 + [6, 6])),
    ("decide 3K44 (2^18,4^3)", lambda k: k.decide(4, 4, [3] * 16, [2] * 18 + [4] * 3)),
    ("refute 2K33 (6,6,6) tail", lambda k: k.decide(3, 3, [2] * 9, [6, 4, 4, 2, 2])),
    ("census 2K23", lambda k: _census(k, 2, 2, 3)),
    ("census 2K33", lambda k: _census(k, 2, 3, 3)),
]


def _best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _speedups is None:
        print("compiled kernel not built; benchmarking pure kernel only")
    header = f"{'case':32s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for label, runner in CASES:
        t_pure, r_pure = _best_of(lambda: runner(_search_py), args.repeat)
        if _speedups is None:
            print(f"{label:32s} {t_pure * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")
            continue
        t_fast, r_fast = _best_of(lambda: runner(_speedups), args.repeat)
        agree = "" if r_pure == r_fast else "  MISMATCH!"
        print(
            f"{label:32s} {t_pure * 1e3:9.2f}ms {t_fast * 1e3:9.2f}ms "
            f"{t_pure / t_fast:7.1f}x{agree}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
