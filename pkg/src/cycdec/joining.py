"""Leave surgery built on twin-vertex switches.

The routines here transform a packing's leave step by step: split one
component into two prescribed cycles, gather scattered components into a
single chain, concentrate excess degree onto one vertex, and finally join
two packed cycles into one longer cycle while a third, larger cycle is
held in the leave alongside them.

Every routine preserves the packing invariant and (except where its
contract says otherwise) the multiset of packed cycle lengths.  All
internal choices (which twin, which origin, which terminus) follow fixed
canonical orders, so runs are deterministic and auditable through the
switch log.  After each switch the routines first try to read the target
cycles straight out of the leave with a small exact search; only when that
fails do they continue transforming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import certify
from .model import (
    Cycle,
    EdgeMultiset,
    GraphSpec,
    KIND_CHAIN,
    KIND_CYCLE,
    KIND_RING,
    LeaveComponent,
    Packing,
    Vertex,
    classify_leave,
    left,
    pair_of,
    right,
)
from .oracle import decompose_multiset
from .switching import (
    InfeasibleSwitchError,
    InvalidTwinError,
    SwitchLog,
    SwitchRecord,
    perform_switch,
)


class SurgeryPreconditionError(ValueError):
    """A routine was called outside its stated hypotheses."""


class SurgeryDefectError(RuntimeError):
    """An internal guarantee failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class PathSplit:
    """Decomposition of one leave component into two edge-disjoint paths
    sharing both endpoints."""

    first: tuple[Vertex, ...]
    second: tuple[Vertex, ...]

    @property
    def endpoints(self) -> tuple[Vertex, Vertex]:
        return tuple(sorted((self.first[0], self.first[-1])))  # type: ignore[return-value]


@dataclass(frozen=True)
class SplitOutcome:
    packing: Packing
    record: SwitchRecord
    split: bool


def _leave_bound(spec: GraphSpec) -> int:
    v, u = min(spec.v, spec.u), max(spec.v, spec.u)
    return 2 * v + 2 if v < u else 2 * v


def _single_nontrivial(leave: EdgeMultiset) -> LeaveComponent:
    comps = classify_leave(leave).components
    if len(comps) != 1:
        raise SurgeryPreconditionError(
            f"expected one non-trivial leave component, found {len(comps)}"
        )
    return comps[0]


def _checked(p: Packing) -> Packing:
    res = certify.verify_packing(p)
    if not res:
        raise SurgeryDefectError(f"packing invariant broken: {res.reason}")
    return p


def _extract_all(p: Packing, lengths: Sequence[int]) -> Packing | None:
    """Move the whole leave into packed cycles of the given lengths, if the
    leave happens to admit exactly that partition."""
    if p.leave.size != sum(lengths):
        return None
    cycles = decompose_multiset(p.spec.v, p.spec.u, p.leave, lengths)
    if cycles is None:
        return None
    return Packing(p.spec, p.cycles + tuple(cycles), EdgeMultiset.empty())


def _leave_neighbors(leave: EdgeMultiset, x: Vertex) -> list[Vertex]:
    out = set()
    for (i, j), c in leave.items():
        if not c:
            continue
        if x.is_left and i == x.index:
            out.add(right(j))
        elif not x.is_left and j == x.index:
            out.add(left(i))
    return sorted(out)


def _isolated_twin(p: Packing, x: Vertex) -> Vertex | None:
    degs = p.leave.degrees()
    n = p.spec.part_size(x.part)
    for k in range(n):
        cand = Vertex(x.part, k)
        if cand != x and degs.get(cand, 0) == 0:
            return cand
    return None


def _orient_from(c: Cycle, anchor: Vertex) -> list[Vertex]:
    """Cycle as a list starting at anchor, second vertex chosen least."""
    vs = list(c.vertices)
    i = vs.index(anchor)
    fwd = vs[i:] + vs[:i]
    bwd = [fwd[0]] + fwd[1:][::-1]
    return fwd if fwd[1] < bwd[1] else bwd


def _is_simple_path(res: dict[tuple[int, int], int]) -> tuple[Vertex, ...] | None:
    """The vertex sequence of res if it forms a single simple path."""
    edges = [(pq, c) for pq, c in res.items() if c]
    if not edges or any(c > 1 for _, c in edges):
        return None
    degs: dict[Vertex, int] = {}
    for (i, j), _ in edges:
        for x in (left(i), right(j)):
            degs[x] = degs.get(x, 0) + 1
    ends = sorted(x for x, d in degs.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in degs.values()):
        return None
    if len(edges) != len(degs) - 1:
        return None
    residual = {pq: c for pq, c in edges}
    path = [ends[0]]
    cur = ends[0]
    for _ in range(len(edges)):
        nxt = None
        for (i, j), c in residual.items():
            if not c:
                continue
            if cur.is_left and i == cur.index:
                nxt = right(j)
            elif not cur.is_left and j == cur.index:
                nxt = left(i)
            else:
                continue
            residual[(i, j)] -= 1
            break
        if nxt is None:
            return None
        path.append(nxt)
        cur = nxt
    if any(residual.values()):
        return None
    return tuple(path)


def _iter_path_splits(
    pairs: dict[tuple[int, int], int], m1: int
) -> Iterator[PathSplit]:
    """All decompositions of a component into an m1-path plus a path."""
    total = sum(pairs.values())
    m2 = total - m1
    if m1 < 1 or m2 < 1:
        return
    if m1 > m2:
        for sp in _iter_path_splits(pairs, m2):
            yield PathSplit(sp.second, sp.first)
        return
    verts = sorted(_pair_vertices(pairs))

    def dfs(seq: list[Vertex], residual: dict) -> Iterator[PathSplit]:
        if len(seq) == m1 + 1:
            rest = _is_simple_path(residual)
            if rest is not None:
                yield PathSplit(tuple(seq), rest)
            return
        cur = seq[-1]
        for nxt in _residual_neighbors(residual, cur):
            if nxt in seq:
                continue
            pq = pair_of(cur, nxt)
            residual[pq] -= 1
            seq.append(nxt)
            yield from dfs(seq, residual)
            seq.pop()
            residual[pq] += 1

    for start in verts:
        yield from dfs([start], dict(pairs))


def _pair_vertices(pairs: dict[tuple[int, int], int]) -> set[Vertex]:
    out: set[Vertex] = set()
    for (i, j), c in pairs.items():
        if c:
            out.add(left(i))
            out.add(right(j))
    return out


def _residual_neighbors(residual: dict, x: Vertex) -> list[Vertex]:
    out = set()
    for (i, j), c in residual.items():
        if not c:
            continue
        if x.is_left and i == x.index:
            out.add(right(j))
        elif not x.is_left and j == x.index:
            out.add(left(i))
    return sorted(out)


def find_path_split(comp: LeaveComponent, m1: int) -> PathSplit | None:
    """First decomposition of the component into an m1-path and a path."""
    for sp in _iter_path_splits(dict(comp.pairs), m1):
        return sp
    return None


def split_component(
    p: Packing,
    path: Sequence[Vertex],
    log: SwitchLog | None = None,
) -> SplitOutcome:
    """Switch the endpoints of an embedded path so that the single leave
    component falls apart into a t-cycle and an (l-t)-cycle.

    path = [x_0, ..., x_t] must have even length >= 4, lie in the unique
    non-trivial component H with E(H) minus E(path) forming a single path,
    and x_1 x_t must not be an edge of H.  The switch is (x_0, x_t) with
    origin x_1.  When the terminus lands on x_(t-1) the split does not
    happen; the outcome is returned flagged so the caller can continue.
    """
    path = list(path)
    t = len(path) - 1
    if t < 4 or t % 2:
        raise SurgeryPreconditionError(f"path length {t} is not an even number >= 4")
    if len(set(path)) != len(path):
        raise SurgeryPreconditionError("path repeats a vertex")
    comp = _single_nontrivial(p.leave)
    cverts = comp.vertex_set()
    if any(x not in cverts for x in path):
        raise SurgeryPreconditionError("path leaves the non-trivial component")
    residual = dict(comp.pairs)
    for a, b in zip(path, path[1:]):
        pq = pair_of(a, b)
        if residual.get(pq, 0) < 1:
            raise SurgeryPreconditionError(f"path edge {a}-{b} not in the component")
        residual[pq] -= 1
    if _is_simple_path(residual) is None:
        raise SurgeryPreconditionError("component minus path is not a single path")
    if p.leave.mult_pair(path[1], path[-1]) > 0:
        raise SurgeryPreconditionError(f"{path[1]}-{path[-1]} is a component edge")
    p2, rec = perform_switch(
        p, path[0], path[-1], path[1], log=log, tag="split"
    )
    return SplitOutcome(_checked(p2), rec, rec.terminus != path[-2])


def _chain_round(
    p: Packing,
    comp: LeaveComponent,
    m1: int,
    m2: int,
    log: SwitchLog | None,
) -> Packing:
    """One switch toward splitting a two-cycle chain into (m1, m2)."""
    a_cyc, b_cyc = comp.cycles
    link = comp.links[0]
    if 2 in (len(a_cyc), len(b_cyc)):
        if len(a_cyc) != 2:
            a_cyc, b_cyc = b_cyc, a_cyc
        x0 = next(x for x in a_cyc.vertices if x != link)
        big_seq = _orient_from(b_cyc, link)
        m_big = max(m1, m2)
        y = big_seq[m_big - 1]
        p2, _ = perform_switch(p, x0, y, link, log=log, tag="chain-split")
        return _checked(p2)

    cands: list[tuple[int, int, int]] = []
    for first in (0, 1):
        p_ = len(comp.cycles[first])
        q_ = len(comp.cycles[1 - first])
        for t in sorted({m1, m2}):
            for i in (
                (p_ + t - m1) // 2,
                (p_ + t - m2) // 2,
                min(p_ - 1, t - 1),
                max(1, t - (q_ - 1)),
            ):
                j = t - i
                if not (1 <= i <= p_ - 1 and 1 <= j <= q_ - 1):
                    continue
                if i == 1 and j in (1, q_ - 1):
                    continue
                if (first, i, j) not in cands:
                    cands.append((first, i, j))
    if not cands:
        raise SurgeryPreconditionError(
            f"no admissible split path for targets ({m1},{m2})"
        )
    first, i, j = cands[0]
    a_seq = _orient_from(comp.cycles[first], link)
    b_seq = _orient_from(comp.cycles[1 - first], link)
    path = list(reversed(a_seq[1 : i + 1])) + [link] + b_seq[1 : j + 1]
    return split_component(p, path, log).packing


def chain_split(
    p: Packing,
    m1: int,
    m2: int,
    log: SwitchLog | None = None,
) -> Packing:
    """Turn the unique leave component, a chain of two cycles, into packed
    cycles of lengths m1 and m2 (m1 + m2 must equal its size)."""
    if m1 % 2 or m2 % 2 or m1 < 2 or m2 < 2:
        raise SurgeryPreconditionError("targets must be even and >= 2")
    comp = _single_nontrivial(p.leave)
    if comp.kind != KIND_CHAIN or len(comp.cycles) != 2:
        raise SurgeryPreconditionError("leave component is not a two-cycle chain")
    if m1 + m2 != comp.size:
        raise SurgeryPreconditionError(
            f"m1+m2 = {m1 + m2} != {comp.size} = component size"
        )
    for _ in range(64):
        done = _extract_all(p, [m1, m2])
        if done is not None:
            return _checked(done)
        comp = _single_nontrivial(p.leave)
        if comp.kind != KIND_CHAIN or len(comp.cycles) != 2:
            raise SurgeryDefectError(f"chain split wandered into {comp.kind}")
        p = _chain_round(p, comp, m1, m2, log)
    raise SurgeryDefectError("chain split did not converge")


def _cycle_round(
    p: Packing,
    comp: LeaveComponent,
    m1: int,
    m2: int,
    offset: int,
    log: SwitchLog | None,
) -> Packing:
    """One switch toward splitting a single leave cycle into (m1, m2)."""
    if max(m1, m2) < 4:
        # a simple cycle stays simple under switches; doubled-pair targets
        # can never appear
        raise SurgeryPreconditionError(
            "a single cycle cannot shed two doubled pairs"
        )
    seq = list(comp.cycles[0].vertices)
    n = len(seq)
    o = (2 * offset) % n
    t = m1 if m1 >= 4 else m2
    path = [seq[(o + k) % n] for k in range(t + 1)]
    return split_component(p, path, log).packing


def _ring_round(
    p: Packing,
    comp: LeaveComponent,
    log: SwitchLog | None,
) -> Packing:
    """One switch that opens a ring into a chain or a smaller ring."""
    r = len(comp.cycles)
    two_idx = [k for k, c in enumerate(comp.cycles) if len(c) == 2]
    alpha = beta = origin = None
    if r >= 3 and two_idx and len(two_idx) < r:
        # a doubled pair next to a larger ring cycle: detach at their link
        for k in two_idx:
            for nb, shared in ((k - 1, k), ((k + 1) % r, (k + 1) % r)):
                if len(comp.cycles[nb % r]) <= 2:
                    continue
                c_link = comp.links[shared % r]
                d = comp.cycles[k]
                other = next(x for x in d.vertices if x != c_link)
                iso = _isolated_twin(p, c_link)
                if iso is None:
                    continue
                alpha, beta, origin = c_link, iso, other
                break
            if alpha is not None:
                break
    if alpha is None:
        # generic opening: free a shared vertex toward an isolated twin
        for cand in sorted(comp.links):
            iso = _isolated_twin(p, cand)
            if iso is not None:
                alpha, beta = cand, iso
                origin = _leave_neighbors(p.leave, alpha)[0]
                break
    if alpha is None:
        raise SurgeryDefectError("no isolated twin available to open the ring")
    p2, _ = perform_switch(p, alpha, beta, origin, log=log, tag="open-ring")
    return _checked(p2)


def close_component(
    p: Packing,
    m1: int,
    m2: int,
    split: PathSplit | None = None,
    log: SwitchLog | None = None,
) -> Packing:
    """Consume the unique non-trivial leave component into packed cycles of
    lengths m1 and m2.

    The component must be a cycle, chain or ring admitting a decomposition
    into an m1-path and an m2-path, and the leave must fit the size bound
    (2v when the parts are equal, 2v+2 otherwise, v the smaller part).
    """
    if m1 % 2 or m2 % 2 or m1 < 2 or m2 < 2:
        raise SurgeryPreconditionError("targets must be even and >= 2")
    comp = _single_nontrivial(p.leave)
    ell = comp.size
    if m1 + m2 != ell:
        raise SurgeryPreconditionError(f"m1+m2 = {m1 + m2} != {ell} = leave size")
    if ell > _leave_bound(p.spec):
        raise SurgeryPreconditionError(
            f"leave size {ell} exceeds bound {_leave_bound(p.spec)}"
        )
    if comp.kind not in (KIND_CYCLE, KIND_CHAIN, KIND_RING):
        raise SurgeryPreconditionError(f"component kind {comp.kind} unsupported")
    if split is None and find_path_split(comp, m1) is None:
        raise SurgeryPreconditionError(
            f"component admits no ({m1},{m2})-path decomposition"
        )
    for rnd in range(128):
        done = _extract_all(p, [m1, m2])
        if done is not None:
            return _checked(done)
        comp = _single_nontrivial(p.leave)
        if comp.kind == KIND_CYCLE:
            p = _cycle_round(p, comp, m1, m2, rnd, log)
        elif comp.kind == KIND_CHAIN:
            if len(comp.cycles) == 2:
                p = _chain_round(p, comp, m1, m2, log)
            else:
                p = _long_chain_round(p, comp, m1, log)
        elif comp.kind == KIND_RING:
            p = _ring_round(p, comp, log)
        else:
            raise SurgeryDefectError(f"leave degenerated into kind {comp.kind}")
    raise SurgeryDefectError("component close did not converge")


def _long_chain_round(
    p: Packing,
    comp: LeaveComponent,
    m1: int,
    log: SwitchLog | None,
) -> Packing:
    """One endpoint switch along an m1-path of a chain of >= 3 cycles."""
    for sp in _iter_path_splits(dict(comp.pairs), m1):
        for path in (sp.first, sp.first[::-1]):
            if p.leave.mult_pair(path[1], path[-1]) == 0:
                return split_component(p, list(path), log).packing
    raise SurgeryDefectError("no switchable path decomposition in chain")


def gather_to_chain(
    p: Packing,
    m1: int,
    m2: int,
    log: SwitchLog | None = None,
) -> tuple[Packing, PathSplit]:
    """Merge all non-trivial leave components into one chain decomposable
    into an m1-path and an m2-path.

    Requires the leave to have exactly one vertex of degree 4 with every
    other degree 2 or 0, and m1, m2 >= k+1 where k is the number of
    non-trivial components.  Packed cycle lengths are unchanged.
    """
    degs = p.leave.degrees()
    high = sorted(x for x, d in degs.items() if d >= 4)
    if len(high) != 1 or degs[high[0]] != 4:
        raise SurgeryPreconditionError(
            "leave must have exactly one vertex of degree 4"
        )
    st = classify_leave(p.leave)
    k = len(st.components)
    if m1 < k + 1 or m2 < k + 1:
        raise SurgeryPreconditionError(
            f"targets ({m1},{m2}) below component bound {k + 1}"
        )
    if m1 + m2 != p.leave.size:
        raise SurgeryPreconditionError(
            f"m1+m2 = {m1 + m2} != {p.leave.size} = leave size"
        )
    for _ in range(4 * k + 32):
        st = classify_leave(p.leave)
        comps = st.components
        if len(comps) == 1:
            only = comps[0]
            if only.kind != KIND_CHAIN:
                raise SurgeryDefectError(f"gather ended on kind {only.kind}")
            sp = find_path_split(only, m1)
            if sp is None:
                raise SurgeryDefectError("gathered chain admits no target split")
            return _checked(p), sp
        chains = [c for c in comps if c.kind == KIND_CHAIN]
        cycles = [c for c in comps if c.kind == KIND_CYCLE]
        if len(chains) != 1 or len(chains) + len(cycles) != len(comps):
            raise SurgeryDefectError("gather lost its chain-plus-cycles shape")
        chain = chains[0]
        bigs = [c for c in cycles if c.size >= 4]
        twos = [c for c in cycles if c.size == 2]
        if bigs:
            p = _gather_big_round(p, chain, bigs, log)
        else:
            p = _absorb_two_round(p, chain, twos, m1 - len(twos), log)
    raise SurgeryDefectError("gather did not converge")


def _gather_big_round(
    p: Packing,
    chain: LeaveComponent,
    bigs: list[LeaveComponent],
    log: SwitchLog | None,
) -> Packing:
    ccycles = chain.cycles
    r = len(ccycles)
    end_two = [
        k for k in (0, r - 1) if len(ccycles[k]) == 2
    ]
    if r >= 3 and end_two:
        # expel the doubled pair at the chain's end before absorbing more
        k = end_two[0]
        x_link = chain.links[0 if k == 0 else -1]
        iso = _isolated_twin(p, x_link)
        if iso is None:
            raise SurgeryDefectError(f"no isolated twin for {x_link}")
        origin = _leave_neighbors(p.leave, x_link)[0]
        p2, _ = perform_switch(p, x_link, iso, origin, log=log, tag="gather")
        return _checked(p2)
    if r == 2 and len(ccycles[0]) == 2 and len(ccycles[1]) == 2:
        # chain is two doubled pairs: bridge it into a big cycle
        non_link = sorted(
            x for c in ccycles for x in c.vertices if x not in chain.links
        )
        x = non_link[0]
        target = bigs[0]
        z = min(v for v in target.cycles[0].vertices if v.part == x.part)
        z_seq = _orient_from(target.cycles[0], z)
        p2, _ = perform_switch(p, x, z, z_seq[1], log=log, tag="gather")
        return _checked(p2)
    # absorb one big cycle at a clean (length >= 4) end cycle
    ends = [ccycles[0], ccycles[-1]]
    end = next((e for e in ends if len(e) >= 4), None)
    if end is None:
        raise SurgeryDefectError("no large end cycle to absorb into")
    x = min(v for v in end.vertices if v not in chain.links)
    y = _leave_neighbors(p.leave, x)[0]
    target = bigs[0]
    z = min(v for v in target.cycles[0].vertices if v.part == x.part)
    p2, _ = perform_switch(p, x, z, y, log=log, tag="gather")
    return _checked(p2)


def _absorb_two_round(
    p: Packing,
    chain: LeaveComponent,
    twos: list[LeaveComponent],
    target1: int,
    log: SwitchLog | None,
) -> Packing:
    """Stitch one detached doubled pair onto the chain at a path endpoint."""
    sp = find_path_split(chain, target1)
    if sp is None:
        raise SurgeryDefectError(
            f"chain admits no {target1}-path decomposition while absorbing"
        )
    x0 = min(sp.endpoints)
    path = sp.first if sp.first[0] == x0 else sp.first[::-1]
    x1 = path[1]
    d = twos[0]
    z0 = next(v for v in d.cycles[0].vertices if v.part == x0.part)
    p2, _ = perform_switch(p, z0, x0, x1, log=log, tag="gather")
    return _checked(p2)


def extract_two_cycles(
    p: Packing,
    m1: int,
    m2: int,
    log: SwitchLog | None = None,
) -> Packing:
    """Gather the leave into a chain, then close it into an m1-cycle and an
    m2-cycle.  Same degree-profile hypotheses as gather_to_chain plus even
    targets and the leave size bound."""
    if m1 % 2 or m2 % 2:
        raise SurgeryPreconditionError("targets must be even")
    st = classify_leave(p.leave)
    k = len(st.components)
    lo = max(2, k + 1)
    if m1 < lo or m2 < lo:
        raise SurgeryPreconditionError(f"targets ({m1},{m2}) below {lo}")
    if m1 + m2 != p.leave.size:
        raise SurgeryPreconditionError("targets do not sum to the leave size")
    if p.leave.size > _leave_bound(p.spec):
        raise SurgeryPreconditionError("leave exceeds the size bound")
    p2, split = gather_to_chain(p, m1, m2, log)
    return close_component(p2, m1, m2, split=split, log=log)


def shift_degree(
    p: Packing,
    a: Vertex,
    b: Vertex,
    log: SwitchLog | None = None,
) -> Packing:
    """Move one unit of leave degree (two edge ends) from a to its twin b.

    Requires deg(a) > deg(b); afterwards deg(a) drops by 2, deg(b) rises by
    2 and every other degree is unchanged, as are all cycle lengths.
    """
    if a.part != b.part or a == b:
        raise InvalidTwinError(f"{a} and {b} are not twin vertices")
    degs = p.leave.degrees()
    da, db = degs.get(a, 0), degs.get(b, 0)
    if da <= db:
        raise SurgeryPreconditionError(f"deg({a}) = {da} <= {db} = deg({b})")
    origins = [
        w
        for w in _leave_neighbors(p.leave, a)
        if p.leave.mult_pair(w, a) > p.leave.mult_pair(w, b)
    ]
    for origin in origins:
        try:
            p2, _ = perform_switch(
                p, a, b, origin, require_alpha_terminus=True, log=log, tag="shift"
            )
            return _checked(p2)
        except InfeasibleSwitchError:
            continue
    raise SurgeryDefectError(f"no degree shift from {a} to {b} was feasible")


def concentrate_degree(p: Packing, log: SwitchLog | None = None) -> Packing:
    """Shift leave degree until exactly one vertex has degree 4 and every
    other vertex has degree 2 or 0.

    The number of non-trivial components of the result is at most
    min(k0 + d0 - 1, floor(l/2) - 1), where k0 counts components, l is the
    leave size and d0 is half the total degree excess over 2 among
    degree->=4 vertices of the input.
    """
    ell = p.leave.size
    if ell > _leave_bound(p.spec):
        raise SurgeryPreconditionError("leave exceeds the size bound")
    degs = p.leave.degrees()
    high = sorted(x for x, d in degs.items() if d >= 4)
    if not high:
        raise SurgeryPreconditionError("no leave vertex of degree >= 4")
    k0 = len(classify_leave(p.leave).components)
    d0 = sum(degs[x] - 2 for x in high) // 2
    for _ in range(2 * d0 + 8):
        degs = p.leave.degrees()
        high = sorted(x for x, d in degs.items() if d >= 4)
        if len(high) == 1 and degs[high[0]] == 4:
            break
        shifted = False
        for b in high:
            iso = _isolated_twin(p, b)
            if iso is not None:
                p = shift_degree(p, b, iso, log)
                shifted = True
                break
        if not shifted:
            raise SurgeryDefectError("no isolated twin for any high-degree vertex")
    degs = p.leave.degrees()
    high = [x for x, d in degs.items() if d >= 4]
    if len(high) != 1 or degs[high[0]] != 4:
        raise SurgeryDefectError("degree concentration did not converge")
    k = len(classify_leave(p.leave).components)
    if k > min(k0 + d0 - 1, ell // 2 - 1):
        raise SurgeryDefectError(
            f"component count {k} exceeds bound "
            f"min({k0}+{d0}-1, {ell}//2-1)"
        )
    return p


def join_two_cycles(
    d: Packing,
    h_idx: int,
    m_idx: int,
    mp_idx: int,
    log: SwitchLog | None = None,
) -> Packing:
    """Replace the cycles at m_idx and mp_idx (lengths m, m') by a single
    (m+m')-cycle, using the cycle at h_idx (length h) as workspace.

    Requires an empty leave, m + m' <= h, and h + m + m' within the leave
    size bound.  The result is again a decomposition; its length multiset
    is the input's with {m, m'} replaced by {m + m'}.
    """
    if d.leave.size:
        raise SurgeryPreconditionError("join requires an empty leave")
    n = len(d.cycles)
    if len({h_idx, m_idx, mp_idx}) != 3 or not all(
        0 <= i < n for i in (h_idx, m_idx, mp_idx)
    ):
        raise SurgeryPreconditionError("need three distinct valid cycle indices")
    h = len(d.cycles[h_idx])
    m = len(d.cycles[m_idx])
    mp = len(d.cycles[mp_idx])
    if m + mp > h:
        raise SurgeryPreconditionError(f"m+m' = {m + mp} > {h} = h")
    bound = _leave_bound(d.spec)
    if h + m + mp > bound:
        raise SurgeryPreconditionError(
            f"h+m+m' = {h + m + mp} exceeds bound {bound}"
        )
    expected = sorted(d.cycle_lengths())
    expected.remove(m)
    expected.remove(mp)
    expected.append(m + mp)
    expected.sort()

    keep = tuple(
        c for i, c in enumerate(d.cycles) if i not in (h_idx, m_idx, mp_idx)
    )
    deltas: list[tuple[tuple[int, int], int]] = []
    for i in (h_idx, m_idx, mp_idx):
        deltas.extend(d.cycles[i].edge_deltas(+1))
    leave = EdgeMultiset.empty().with_deltas(deltas, cap=d.spec.lam)
    p = _checked(Packing(d.spec, keep, leave))

    done = _extract_all(p, [h, m + mp])
    if done is None:
        degs = p.leave.degrees()
        if max(degs.values()) <= 2:
            p = _merge_two_components(p, m, mp, log)
            done = _extract_all(p, [h, m + mp])
    if done is None:
        p = concentrate_degree(p, log)
        done = extract_two_cycles(p, h, m + mp, log)
    out = _checked(done)
    if list(out.cycle_lengths()) != expected:
        raise SurgeryDefectError("join changed unrelated cycle lengths")
    return out


def _merge_two_components(
    p: Packing, m: int, mp: int, log: SwitchLog | None
) -> Packing:
    """Connect the two small leave cycles when all three are disjoint."""
    comps = classify_leave(p.leave).components
    c1 = next(c for c in comps if c.size == m)
    c2 = next(c for c in comps if c.size == mp and c is not c1)
    alpha = min(c1.vertex_set())
    beta = min(x for x in c2.vertex_set() if x.part == alpha.part)
    origin = _leave_neighbors(p.leave, alpha)[0]
    p2, _ = perform_switch(p, alpha, beta, origin, log=log, tag="join")
    return _checked(p2)
