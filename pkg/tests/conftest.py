"""Shared fixtures: leave-driven packings and randomized packings."""

from __future__ import annotations

import random

from cycdec import (
    EdgeMultiset,
    GraphSpec,
    Packing,
    canonicalize_cycle,
    left,
    pair_of,
    right,
    switch_edge_set,
)


def _least_active(residual):
    for (i, j), c in sorted(residual.items()):
        if c:
            return left(i)
    return None


def _least_neighbor(residual, x):
    best = None
    for (i, j), c in sorted(residual.items()):
        if not c:
            continue
        if x.is_left and i == x.index:
            y = right(j)
        elif not x.is_left and j == x.index:
            y = left(i)
        else:
            continue
        if best is None or y < best:
            best = y
    return best


def cycles_of_even_multiset(ms: EdgeMultiset):
    """Greedy partition of an even multiset into cycles (loop extraction)."""
    residual = ms.to_dict()
    out, walk = [], []
    while True:
        if not walk:
            start = _least_active(residual)
            if start is None:
                break
            walk = [start]
        cur = walk[-1]
        nb = _least_neighbor(residual, cur)
        if nb is None:
            walk.pop()
            continue
        residual[pair_of(cur, nb)] -= 1
        if nb in walk:
            idx = walk.index(nb)
            out.append(canonicalize_cycle(walk[idx:]))
            walk = walk[: idx + 1]
        else:
            walk.append(nb)
    assert not any(residual.values())
    return out


def packing_with_leave(spec: GraphSpec, leave_pairs) -> Packing:
    """A packing of the host whose leave is exactly the given multiset."""
    leave = EdgeMultiset(leave_pairs)
    residual = EdgeMultiset.full(spec).with_deltas(
        [(p, -c) for p, c in leave.items()]
    )
    return Packing(spec, tuple(cycles_of_even_multiset(residual)), leave)


def random_packing(rng: random.Random, spec: GraphSpec) -> Packing:
    """Carve a random number of random cycles out of the full host."""
    residual = EdgeMultiset.full(spec).to_dict()
    cycles = []
    want = rng.randrange(0, max(2, spec.edge_count // 3))
    for _ in range(40):
        if len(cycles) >= want:
            break
        c = _random_cycle(rng, residual)
        if c is None:
            break
        cycles.append(c)
        for pq in c.edge_pairs():
            residual[pq] -= 1
    return Packing(spec, tuple(cycles), EdgeMultiset(residual))


def _random_cycle(rng, residual):
    active = [left(i) for (i, j), c in residual.items() if c]
    if not active:
        return None
    for _ in range(24):
        scratch = dict(residual)
        walk = [rng.choice(active)]
        for _ in range(64):
            cur = walk[-1]
            nbs = []
            for (i, j), c in scratch.items():
                if not c:
                    continue
                if cur.is_left and i == cur.index:
                    nbs.append(right(j))
                elif not cur.is_left and j == cur.index:
                    nbs.append(left(i))
            if not nbs:
                break
            nxt = rng.choice(sorted(nbs))
            scratch[pair_of(cur, nxt)] -= 1
            if nxt in walk:
                idx = walk.index(nxt)
                return canonicalize_cycle(walk[idx:])
            walk.append(nxt)
    return None


def random_switch_args(rng: random.Random, p: Packing):
    """A random (alpha, beta, origin) triple with exchangeable slots."""
    spec = p.spec
    verts = spec.vertices()
    for _ in range(40):
        a, b = rng.sample(verts, 2)
        if a.part != b.part:
            continue
        slots = switch_edge_set(p.leave, a, b)
        if not slots:
            continue
        w, _end = rng.choice(slots)
        return a, b, w
    return None
