"""Edge switches between twin vertices of a packing's leave.

An (alpha, beta)-switch moves one leave edge at the origin vertex from
alpha to beta (or vice versa) together with a matching second edge, and
repairs the packed cycles so that every cycle keeps its length.  In a
complete bipartite host any two same-part vertices are twins, which is
exactly the condition enforced here.

The repair is found by contract-checked search: candidate terminus slots
are tried in canonical vertex order and, for each, the affected cycles are
reassigned among their allowed variants (identity / endpoint transposition
on each alpha-beta arm) under per-pair multiplicity budgets.  The first
assignment restoring the packing invariant wins, which makes every switch
deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

from .model import (
    Cycle,
    EdgeMultiset,
    OverfullError,
    Packing,
    Vertex,
    canonicalize_cycle,
    left,
    pair_of,
    right,
)


class SwitchError(ValueError):
    pass


class InvalidTwinError(SwitchError):
    """alpha and beta are not distinct same-part vertices."""


class NoExcessError(SwitchError):
    """The origin has no excess multiplicity toward either endpoint."""


class InfeasibleSwitchError(RuntimeError):
    """No repair exists; cannot happen when preconditions hold."""


@dataclass(frozen=True)
class SwitchRecord:
    alpha: Vertex
    beta: Vertex
    origin: Vertex
    terminus: Vertex
    toggled: tuple[tuple[tuple[int, int], int], ...]

    def audit_line(self) -> str:
        tog = ",".join(
            f"{'+' if d > 0 else '-'}L{i}R{j}" for (i, j), d in self.toggled
        )
        return (
            f"alpha={self.alpha} beta={self.beta} origin={self.origin} "
            f"terminus={self.terminus} toggled={tog}"
        )


class SwitchLog:
    """Audit log: one line per performed switch, tagged by caller."""

    def __init__(self, sink: Callable[[str], None] | None = None):
        self.lines: list[str] = []
        self._sink = sink

    def record(self, tag: str, rec: SwitchRecord) -> None:
        line = f"{tag} {rec.audit_line()}"
        self.lines.append(line)
        if self._sink is not None:
            self._sink(line)


def _require_twins(alpha: Vertex, beta: Vertex) -> None:
    if alpha.part != beta.part or alpha == beta:
        raise InvalidTwinError(f"{alpha} and {beta} are not twin vertices")


def switch_edge_set(
    leave: EdgeMultiset, alpha: Vertex, beta: Vertex
) -> tuple[tuple[Vertex, Vertex], ...]:
    """The exchangeable slots: for every other vertex w, the excess of
    leave edges w-alpha over w-beta sits on alpha's side and vice versa.
    Returned as (w, endpoint) pairs expanded by multiplicity."""
    _require_twins(alpha, beta)
    mu_a: dict[Vertex, int] = {}
    mu_b: dict[Vertex, int] = {}
    for (i, j), c in leave.items():
        if alpha.is_left:
            w = right(j)
            if i == alpha.index:
                mu_a[w] = mu_a.get(w, 0) + c
            if i == beta.index:
                mu_b[w] = mu_b.get(w, 0) + c
        else:
            w = left(i)
            if j == alpha.index:
                mu_a[w] = mu_a.get(w, 0) + c
            if j == beta.index:
                mu_b[w] = mu_b.get(w, 0) + c
    slots: list[tuple[Vertex, Vertex]] = []
    for w in sorted(set(mu_a) | set(mu_b)):
        a, b = mu_a.get(w, 0), mu_b.get(w, 0)
        slots.extend([(w, alpha)] * max(0, a - b))
        slots.extend([(w, beta)] * max(0, b - a))
    slots.sort(key=lambda s: (s[0], 0 if s[1] == alpha else 1))
    return tuple(slots)


def perform_switch(
    p: Packing,
    alpha: Vertex,
    beta: Vertex,
    origin: Vertex,
    *,
    require_alpha_terminus: bool = False,
    log: SwitchLog | None = None,
    tag: str = "switch",
) -> tuple[Packing, SwitchRecord]:
    """Perform the (alpha, beta)-switch with the given origin.

    Roles are normalized so that the origin's excess lies on alpha (the
    pair (origin, alpha) loses a copy, (origin, beta) gains one); callers
    may pass alpha/beta in either order.  The terminus is the other vertex
    whose slot completes the exchange, reported in the returned record.
    With require_alpha_terminus, only termini on alpha's side are accepted
    (both removed slots then sit at alpha, dropping its degree by 2).
    """
    _require_twins(alpha, beta)
    leave = p.leave
    mu_oa = leave.mult_pair(origin, alpha)
    mu_ob = leave.mult_pair(origin, beta)
    if mu_oa == mu_ob:
        raise NoExcessError(
            f"origin {origin}: mult to {alpha} and {beta} both {mu_oa}"
        )
    if mu_oa < mu_ob:
        alpha, beta = beta, alpha
        mu_oa, mu_ob = mu_ob, mu_oa

    slots = list(switch_edge_set(leave, alpha, beta))
    slots.remove((origin, alpha))
    lam = p.spec.lam
    op_a = pair_of(origin, alpha)
    op_b = pair_of(origin, beta)

    tried: set[tuple[Vertex, Vertex]] = set()
    for f in slots:
        if f in tried:
            continue
        tried.add(f)
        w, end = f
        if require_alpha_terminus and end != alpha:
            continue
        other = beta if end == alpha else alpha
        f_pair = pair_of(w, end)
        sf_pair = pair_of(w, other)
        deltas = Counter()
        deltas[op_a] -= 1
        deltas[op_b] += 1
        deltas[f_pair] -= 1
        deltas[sf_pair] += 1
        try:
            new_leave = leave.with_deltas(deltas.items(), cap=lam)
        except OverfullError:
            continue
        repaired = _repair_cycles(p, alpha, beta, new_leave)
        if repaired is None:
            continue
        record = SwitchRecord(
            alpha,
            beta,
            origin,
            w,
            tuple(sorted((pair, d) for pair, d in deltas.items() if d)),
        )
        out = Packing(p.spec, repaired, new_leave)
        if log is not None:
            log.record(tag, record)
        return out, record
    raise InfeasibleSwitchError(
        f"no repair for ({alpha},{beta})-switch with origin {origin}"
    )


def _sigma_one(c: Cycle, gamma: Vertex, delta: Vertex) -> Cycle:
    """Transpose gamma -> delta in a cycle containing only gamma."""
    return canonicalize_cycle(
        tuple(delta if x == gamma else x for x in c.vertices)
    )


def _arm_variants(c: Cycle, alpha: Vertex, beta: Vertex) -> list[Cycle]:
    """The four rejoinings of the two alpha-beta arms of a cycle through
    both endpoints (identity or endpoint transposition per arm)."""
    vs = list(c.vertices)
    n = len(vs)
    ia, ib = vs.index(alpha), vs.index(beta)
    arm1 = [vs[(ia + k) % n] for k in range(((ib - ia) % n) + 1)]  # a..b
    arm2 = [vs[(ib + k) % n] for k in range(((ia - ib) % n) + 1)]  # b..a
    mids1 = arm1[1:-1]
    mids2 = arm2[1:-1]
    x_opts = (
        [alpha] + mids1 + [beta],
        [alpha] + mids1[::-1] + [beta],
    )
    y_opts = (
        [alpha] + mids2[::-1] + [beta],
        [alpha] + mids2 + [beta],
    )
    out = []
    for xi in (0, 1):
        for yi in (0, 1):
            armx, army = x_opts[xi], y_opts[yi]
            out.append(canonicalize_cycle(tuple(armx[:-1] + army[::-1][:-1])))
    return out


def _ab_footprint(c: Cycle, alpha: Vertex, beta: Vertex) -> Counter:
    foot: Counter = Counter()
    vs = c.vertices
    m = len(vs)
    for k in range(m):
        a, b = vs[k], vs[(k + 1) % m]
        if a in (alpha, beta) or b in (alpha, beta):
            foot[pair_of(a, b)] += 1
    return foot


def _repair_cycles(
    p: Packing, alpha: Vertex, beta: Vertex, new_leave: EdgeMultiset
) -> tuple[Cycle, ...] | None:
    """Reassign the cycles through alpha/beta so that cycle edges plus the
    new leave exactly exhaust the host multiplicities."""
    spec = p.spec
    lam = spec.lam
    opposite = range(spec.u) if alpha.is_left else range(spec.v)
    mk = right if alpha.is_left else left

    needed: Counter = Counter()
    for k in opposite:
        w = mk(k)
        pa, pb = pair_of(w, alpha), pair_of(w, beta)
        needed[pa] = lam - new_leave.mult(*pa)
        needed[pb] = lam - new_leave.mult(*pb)
        if needed[pa] < 0 or needed[pb] < 0:
            return None

    affected: list[int] = []
    options: list[list[tuple[Cycle, Counter]]] = []
    supply = 0
    for idx, c in enumerate(p.cycles):
        has_a, has_b = alpha in c, beta in c
        if not has_a and not has_b:
            continue
        affected.append(idx)
        if has_a and has_b:
            variants = _arm_variants(c, alpha, beta)
        else:
            gamma = alpha if has_a else beta
            delta = beta if has_a else alpha
            variants = [c, _sigma_one(c, gamma, delta)]
        opts = [(var, _ab_footprint(var, alpha, beta)) for var in variants]
        supply += sum(opts[0][1].values())
        options.append(opts)

    if supply != sum(needed.values()):
        return None

    consumed: Counter = Counter()
    choice: list[Cycle | None] = [None] * len(affected)

    def dfs(pos: int) -> bool:
        if pos == len(affected):
            return all(consumed[pair] == need for pair, need in needed.items())
        for var, foot in options[pos]:
            ok = True
            for pair, c in foot.items():
                consumed[pair] += c
                if consumed[pair] > needed[pair]:
                    ok = False
            if ok:
                choice[pos] = var
                if dfs(pos + 1):
                    return True
            for pair, c in foot.items():
                consumed[pair] -= c
        return False

    if not dfs(0):
        return None
    out = list(p.cycles)
    for slot, idx in enumerate(affected):
        out[idx] = choice[slot]  # type: ignore[assignment]
    return tuple(out)
