"""Base decompositions and the top-level constructive driver.

The driver builds a decomposition with the prescribed length sequence M in
three stages: a base decomposition made of doubled pairs, 4-cycles and the
one or two protected longest cycles; a merge plan allocating the small
base cycles to the remaining targets; and a sequence of cycle joins, each
protected by the longest cycle, that grows every target to size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import certify
from .conditions import check_constructive_hypotheses
from .model import (
    Cycle,
    EdgeMultiset,
    GraphSpec,
    LengthSeq,
    Packing,
    Vertex,
    canonicalize_cycle,
    left,
    right,
)
from .oracle import decompose_multiset
from .joining import SurgeryPreconditionError, join_two_cycles
from .switching import SwitchLog


class ConstructorError(ValueError):
    pass


class InputError(ConstructorError):
    """Arguments outside the operation's stated hypotheses."""


class NotCoveredError(ConstructorError):
    """The instance is outside the constructive pipeline's coverage."""


class BaseUnavailableError(ConstructorError):
    """No base decomposition could be produced (search missed or timed out)."""


class PlanInfeasibleError(ConstructorError):
    """No allocation of base cycles to targets satisfies the join bounds."""


class ConstructiveGapError(ConstructorError):
    """Covered instance on which the pipeline failed; carries diagnostics."""


def base_even(spec: GraphSpec, m_t: int) -> Packing:
    """Decomposition of an even-multiplicity host into one m_t-cycle, the
    minimum number (m_t-2)/2 of supporting 4-cycles, and doubled pairs.

    The m_t-cycle is laid on the first m_t/2 vertices of each part; each
    4-cycle reuses its chord through the first left vertex, so the union of
    the non-pair cycles covers every touched pair exactly twice.
    """
    lam, v, u = spec.lam, spec.v, spec.u
    if lam % 2:
        raise InputError(f"multiplicity {lam} is odd")
    if m_t % 2 or m_t < 2:
        raise InputError(f"m_t = {m_t} is not an even number >= 2")
    if m_t > 2 * min(v, u):
        raise InputError(f"m_t = {m_t} > {2 * min(v, u)} = 2*min(v,u)")
    n = m_t // 2
    big = []
    for k in range(n):
        big.extend([left(k), right(k)])
    cycles = [canonicalize_cycle(big)]
    for k in range(1, n):
        cycles.append(
            canonicalize_cycle([left(0), right(k - 1), left(k), right(k)])
        )
    consumed: dict[tuple[int, int], int] = {}
    for c in cycles:
        for pq in c.edge_pairs():
            consumed[pq] = consumed.get(pq, 0) + 1
    twos = 0
    for i in range(v):
        for j in range(u):
            rem = lam - consumed.get((i, j), 0)
            if rem < 0 or rem % 2:
                raise InputError(f"pair (L{i},R{j}) leaves remainder {rem}")
            for _ in range(rem // 2):
                cycles.append(canonicalize_cycle([left(i), right(j)]))
                twos += 1
    p = Packing.from_cycles(spec, cycles)
    assert p.is_decomposition()
    return p


def _grid_four_cycles(v: int, u: int) -> list[Cycle]:
    out = []
    for i in range(0, v, 2):
        for j in range(0, u, 2):
            out.append(
                canonicalize_cycle(
                    [left(i), right(j), left(i + 1), right(j + 1)]
                )
            )
    return out


def simple_base(
    v: int,
    u: int,
    lengths: Sequence[int],
    budget: float | None = None,
    six_cycle_leave: bool = False,
) -> tuple[Packing, Cycle | None]:
    """Packing of the single-multiplicity host with the given cycle
    lengths, leaving nothing or one designated 6-cycle.

    All-4-cycle requests on even-by-even parts use a closed-form grid;
    everything else is found by bounded exact search.  A missed or timed
    out search raises BaseUnavailableError rather than guessing.
    """
    lengths = sorted(lengths)
    if any(m % 2 or m < 4 for m in lengths):
        raise InputError("layer cycle lengths must be even and >= 4")
    want = v * u - (6 if six_cycle_leave else 0)
    if sum(lengths) != want:
        raise InputError(f"lengths sum to {sum(lengths)}, expected {want}")
    spec1 = GraphSpec(1, v, u)
    if not six_cycle_leave and v % 2 == 0 and u % 2 == 0 and all(
        m == 4 for m in lengths
    ):
        p = Packing.from_cycles(spec1, _grid_four_cycles(v, u))
        return p, None
    targets = list(lengths) + ([6] if six_cycle_leave else [])
    found = decompose_multiset(
        v, u, EdgeMultiset.full(spec1), targets, budget=budget
    )
    if found is None:
        raise BaseUnavailableError(
            f"no single-layer packing with lengths {targets} found in budget"
        )
    leave_cycle: Cycle | None = None
    if six_cycle_leave:
        keep: list[Cycle] = []
        for c in found:
            if leave_cycle is None and len(c) == 6:
                leave_cycle = c
            else:
                keep.append(c)
        found = keep
        assert leave_cycle is not None
    return Packing.from_cycles(spec1, found), leave_cycle


def base_odd(
    spec: GraphSpec,
    m_t: int,
    m_t1: int,
    budget: float | None = None,
) -> Packing:
    """Decomposition of an odd-multiplicity host whose non-pair cycles are
    the protected m_(t-1)- and m_t-cycles plus the minimum number of
    4-cycles, everything else doubled pairs.

    One multiplicity layer carries the large cycles.  When the 4-cycle
    count does not come out integral, the layer is packed around a 6-cycle
    remainder which is then rewritten as two 4-cycles sharing one extra
    edge borrowed from the remaining layers (hence lam >= 3 there).
    """
    lam, v, u = spec.lam, spec.v, spec.u
    if lam % 2 == 0:
        raise InputError(f"multiplicity {lam} is even")
    if v % 2 or u % 2:
        raise InputError("both part sizes must be even")
    if m_t1 % 2 or m_t % 2 or not 4 <= m_t1 <= m_t:
        raise InputError(f"need even 4 <= m_(t-1) <= m_t, got ({m_t1},{m_t})")
    if m_t > min(v, u, 3 * m_t1):
        raise InputError(
            f"m_t = {m_t} > {min(v, u, 3 * m_t1)} = min(v,u,3*m_(t-1))"
        )
    rem = v * u - m_t - m_t1
    assert rem >= 0
    cycles: list[Cycle]
    if rem % 4 == 0:
        layer, _ = simple_base(
            v, u, [4] * (rem // 4) + [m_t1, m_t], budget=budget
        )
        cycles = list(layer.cycles)
        extra: dict[tuple[int, int], int] = {}
    else:
        if rem % 4 != 2:
            raise InputError(f"layer remainder {rem} is odd")
        if lam == 1:
            raise BaseUnavailableError(
                "no spare layer to double an edge: remainder needs it"
            )
        k4 = (rem - 6) // 4
        assert k4 >= 0
        layer, c0 = simple_base(
            v, u, [4] * k4 + [m_t1, m_t], budget=budget, six_cycle_leave=True
        )
        assert c0 is not None
        x = c0.vertices
        c1 = canonicalize_cycle([x[0], x[1], x[2], x[3]])
        c2 = canonicalize_cycle([x[0], x[3], x[4], x[5]])
        cycles = list(layer.cycles) + [c1, c2]
        extra = {}
        for c in (c1, c2):
            for pq in c.edge_pairs():
                extra[pq] = extra.get(pq, 0) + 1
        # the pair x0-x3 is borrowed twice from the non-layer multiplicity
    consumed: dict[tuple[int, int], int] = {}
    for c in cycles:
        for pq in c.edge_pairs():
            consumed[pq] = consumed.get(pq, 0) + 1
    for i in range(v):
        for j in range(u):
            left_over = lam - consumed.get((i, j), 0)
            if left_over < 0 or left_over % 2:
                raise BaseUnavailableError(
                    f"pair (L{i},R{j}) leaves remainder {left_over}"
                )
            for _ in range(left_over // 2):
                cycles.append(canonicalize_cycle([left(i), right(j)]))
    p = Packing.from_cycles(spec, cycles)
    assert p.is_decomposition()
    return p


@dataclass(frozen=True)
class MergePlan:
    """Per-target absorption lists: each group is (target length, pieces),
    pieces drawn from the base in join order (4s before doubled pairs);
    single-piece groups are identity matches and need no join."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def join_count(self) -> int:
        return sum(len(pieces) - 1 for _, pieces in self.groups)


def plan_merges(
    spec: GraphSpec, base_lengths: Sequence[int], M: LengthSeq, h: int
) -> MergePlan:
    """Allocate base cycles to targets so that every partial sum obeys the
    join bounds (sum <= h and sum + h within the leave size bound)."""
    base = sorted(base_lengths, reverse=True)
    if sum(base) != M.total:
        raise InputError(
            f"base sums to {sum(base)}, targets to {M.total}"
        )
    bound = 2 * min(spec.v, spec.u) + (2 if spec.v != spec.u else 0)

    stock: dict[int, int] = {}
    for m in base:
        stock[m] = stock.get(m, 0) + 1

    targets = sorted(M.lengths, reverse=True)
    groups: list[tuple[int, tuple[int, ...]]] = []

    def ok_steps(pieces: Sequence[int]) -> bool:
        s = 0
        for k, c in enumerate(pieces):
            s += c
            if k >= 1 and (s > h or s + h > bound):
                return False
        return True

    def alloc(i: int) -> bool:
        if i == len(targets):
            return all(c == 0 for c in stock.values())
        tgt = targets[i]
        if stock.get(tgt, 0) > 0:
            stock[tgt] -= 1
            groups.append((tgt, (tgt,)))
            if alloc(i + 1):
                return True
            groups.pop()
            stock[tgt] += 1
        max4 = min(stock.get(4, 0), tgt // 4)
        for a in range(max4, -1, -1):
            b, rem2 = divmod(tgt - 4 * a, 2)
            if rem2 or b > stock.get(2, 0):
                continue
            if a + b < 2:
                continue  # single-piece combos are identity matches above
            pieces = (4,) * a + (2,) * b
            if not ok_steps(pieces):
                continue
            stock[4] = stock.get(4, 0) - a
            stock[2] = stock.get(2, 0) - b
            groups.append((tgt, pieces))
            if alloc(i + 1):
                return True
            groups.pop()
            stock[4] += a
            stock[2] += b
        return False

    if not alloc(0):
        raise PlanInfeasibleError(
            f"no allocation of base {sorted(base_lengths)} onto {list(M.lengths)} "
            f"meets the join bounds (h = {h}, size bound {bound})"
        )
    return MergePlan(tuple(groups))


def _transpose_packing(p: Packing) -> Packing:
    spec = p.spec.swapped()
    cycles = tuple(
        canonicalize_cycle(
            [Vertex("L" if x.part == "R" else "R", x.index) for x in c.vertices]
        )
        for c in p.cycles
    )
    return Packing.from_cycles(spec, cycles)


def decompose(
    spec: GraphSpec,
    M: LengthSeq,
    budget: float | None = None,
    log: SwitchLog | None = None,
) -> Packing:
    """Produce a verified decomposition of the host graph with cycle
    lengths exactly M.

    Covered instances only (see check_constructive_hypotheses); others
    raise NotCoveredError so the caller can fall back to exact search.
    Single-multiplicity instances route straight to the one-layer packer.
    A covered instance the pipeline still cannot finish raises
    ConstructiveGapError with diagnostics.
    """
    if spec.v > spec.u:
        return _transpose_packing(decompose(spec.swapped(), M, budget, log))
    cov = check_constructive_hypotheses(spec, M)
    if not cov:
        raise NotCoveredError(str(cov))
    lam = spec.lam
    mt = M.lengths[-1]
    try:
        if lam == 1:
            layer, _ = simple_base(spec.v, spec.u, list(M.lengths), budget=budget)
            out = Packing(spec, layer.cycles, layer.leave)
        else:
            if lam % 2 == 0:
                base = base_even(spec, mt)
            else:
                base = base_odd(spec, mt, M.lengths[-2], budget=budget)
            plan = plan_merges(spec, base.cycle_lengths(), M, h=mt)
            out = _execute_plan(base, plan, mt, log)
    except (BaseUnavailableError, PlanInfeasibleError, InputError) as exc:
        raise ConstructiveGapError(f"{type(exc).__name__}: {exc}") from exc
    res = certify.verify_decomposition(spec, out.cycles, M)
    if not res:
        raise ConstructiveGapError(f"result failed verification: {res.reason}")
    return out


def _index_of_length(p: Packing, length: int, exclude: set[int]) -> int:
    for i, c in enumerate(p.cycles):
        if len(c) == length and i not in exclude:
            return i
    raise ConstructiveGapError(f"no spare cycle of length {length}")


def _execute_plan(
    p: Packing, plan: MergePlan, h: int, log: SwitchLog | None
) -> Packing:
    for target, pieces in plan.groups:
        if len(pieces) == 1:
            continue
        grown = pieces[0]
        for piece in pieces[1:]:
            g_idx = _index_of_length(p, grown, set())
            p_idx = _index_of_length(p, piece, {g_idx})
            h_idx = _index_of_length(p, h, {g_idx, p_idx})
            try:
                p = join_two_cycles(p, h_idx, g_idx, p_idx, log)
            except SurgeryPreconditionError as exc:
                raise ConstructiveGapError(
                    f"join ({h},{grown},{piece}) rejected: {exc}"
                ) from exc
            grown += piece
        assert grown == target
    return p
