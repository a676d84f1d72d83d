"""Exact decision and enumeration of cycle decompositions on small
instances by backtracking search.

Ground truth for tests and the desk-scale realization of the base-layer
packings.  A compiled kernel (_speedups) is used when the extension built;
otherwise the pure-Python twin (_search_py) is selected at import.  Set
CYCDEC_PURE_KERNEL=1 to force the pure kernel.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterable, Iterator

from .model import (
    Cycle,
    EdgeMultiset,
    GraphSpec,
    LengthSeq,
    canonicalize_cycle,
    left,
    right,
)


def _load_kernel():
    if not os.environ.get("CYCDEC_PURE_KERNEL"):
        try:
            from . import _speedups  # type: ignore[attr-defined]

            return _speedups, "compiled"
        except ImportError:
            pass
    from . import _search_py

    return _search_py, "pure"


_kernel, KERNEL = _load_kernel()

EXISTS = "exists"
NOT_EXISTS = "not-exists"
TIMEOUT = "timeout"
_STATUS = {0: EXISTS, 1: NOT_EXISTS, 2: TIMEOUT}

BUDGET_ENV = "CYCDEC_ORACLE_BUDGET"


def default_budget() -> float | None:
    raw = os.environ.get(BUDGET_ENV)
    return float(raw) if raw else None


@dataclass(frozen=True)
class OracleResult:
    status: str
    certificate: tuple[Cycle, ...] | None
    nodes: int
    elapsed: float

    def __bool__(self) -> bool:
        return self.status == EXISTS


def _decode(v: int, ids: list[int]) -> Cycle:
    return canonicalize_cycle(
        [left(t) if t < v else right(t - v) for t in ids]
    )


def _deadline(budget: float | None) -> float | None:
    return None if budget is None else time.monotonic() + budget


def decompose_multiset(
    v: int,
    u: int,
    edges: EdgeMultiset,
    lengths: Iterable[int],
    budget: float | None = None,
) -> list[Cycle] | None:
    """Partition an explicit edge multiset into cycles of the given
    lengths; None when impossible or when the budget runs out."""
    status, raw, _ = _kernel.decide(
        v, u, edges.counts_list(v, u), list(lengths), _deadline(budget)
    )
    if status == 0:
        return [_decode(v, ids) for ids in raw]
    return None


def oracle_decide(
    spec: GraphSpec, M: LengthSeq, budget: float | None = None
) -> OracleResult:
    """Decide whether the host graph decomposes into cycles of lengths M.

    `exists` comes with a verifying certificate; `not-exists` means the
    search space was exhausted (symmetry-reduced); `timeout` is a value,
    not an error.
    """
    if budget is None:
        budget = default_budget()
    t0 = time.monotonic()
    status, raw, nodes = _kernel.decide(
        spec.v,
        spec.u,
        EdgeMultiset.full(spec).counts_list(spec.v, spec.u),
        list(M.lengths),
        _deadline(budget),
    )
    elapsed = time.monotonic() - t0
    cert = tuple(_decode(spec.v, ids) for ids in raw) if status == 0 else None
    return OracleResult(_STATUS[status], cert, nodes, elapsed)


def even_partitions(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All non-decreasing tuples of even parts >= 2 summing to total."""
    if total % 2 or total < 0:
        return
    cap = total if max_part is None else min(max_part, total)

    def rec(remaining: int, min_part: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(acc)
            return
        m = min_part
        while m <= min(remaining, cap):
            if remaining - m == 0 or remaining - m >= m:
                acc.append(m)
                yield from rec(remaining - m, m, acc)
                acc.pop()
            m += 2

    yield from rec(total, 2, [])


def oracle_enumerate(
    spec: GraphSpec, budget: float | None = None
) -> list[tuple[LengthSeq, OracleResult]]:
    """Decide every even length sequence summing to the edge count.

    Returns (M, result) for every candidate, in lexicographic order of M;
    timeouts are flagged per sequence.
    """
    out = []
    for parts in even_partitions(spec.edge_count):
        M = LengthSeq(parts)
        out.append((M, oracle_decide(spec, M, budget)))
    return out


def decomposable_lengths(spec: GraphSpec, budget: float | None = None) -> list[LengthSeq]:
    """The sequences from oracle_enumerate that admit a decomposition."""
    return [M for M, res in oracle_enumerate(spec, budget) if res]
