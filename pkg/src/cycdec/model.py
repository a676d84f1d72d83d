"""Value types for cycle packings of complete bipartite multigraphs.

The host graph is ``lam`` parallel copies of K_{v,u}: a left part ``L`` of
size ``v``, a right part ``R`` of size ``u``, and exactly ``lam`` edges
between every cross pair.  Cycles alternate parts and have even length
``>= 2``; a cycle of length 2 is a doubled pair and consumes multiplicity
2 on that pair.  Edge copies are interchangeable: all bookkeeping is by
multiplicity, never by copy identity.

All types here are immutable values and every operation is a pure
function, so objects may be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

LEFT = "L"
RIGHT = "R"

KIND_CYCLE = "cycle"
KIND_CHAIN = "chain"
KIND_RING = "ring"
KIND_OTHER = "other"


class ModelError(ValueError):
    """Malformed model object or operation input."""


class MalformedCycleError(ModelError):
    """Vertex sequence is not a valid alternating cycle."""


class OverfullError(ModelError):
    """Cycle edges exceed the multiplicity budget on some pair."""


class NotEvenError(ModelError):
    """An even graph was required but an odd-degree vertex was found."""


@dataclass(frozen=True, order=True, repr=False)
class Vertex:
    part: str
    index: int

    def __post_init__(self) -> None:
        if self.part not in (LEFT, RIGHT):
            raise ModelError(f"bad part {self.part!r}")
        if self.index < 0:
            raise ModelError("negative vertex index")

    @property
    def is_left(self) -> bool:
        return self.part == LEFT

    def __repr__(self) -> str:
        return f"{self.part}{self.index}"


def left(i: int) -> Vertex:
    return Vertex(LEFT, i)


def right(j: int) -> Vertex:
    return Vertex(RIGHT, j)


def pair_of(x: Vertex, y: Vertex) -> tuple[int, int]:
    """Normalize a cross edge to its (left index, right index) key."""
    if x.part == y.part:
        raise ModelError(f"{x} and {y} are in the same part; not an edge")
    return (x.index, y.index) if x.is_left else (y.index, x.index)


@dataclass(frozen=True)
class GraphSpec:
    """The triple (lam, v, u): lam parallel copies of K_{v,u}."""

    lam: int
    v: int
    u: int

    def __post_init__(self) -> None:
        if self.lam < 1 or self.v < 1 or self.u < 1:
            raise ModelError("lam, v, u must all be >= 1")

    @property
    def edge_count(self) -> int:
        return self.lam * self.v * self.u

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i in range(self.v):
            for j in range(self.u):
                yield (i, j)

    def vertices(self) -> list[Vertex]:
        return [left(i) for i in range(self.v)] + [right(j) for j in range(self.u)]

    def part_size(self, part: str) -> int:
        return self.v if part == LEFT else self.u

    def swapped(self) -> "GraphSpec":
        return GraphSpec(self.lam, self.u, self.v)


class EdgeMultiset:
    """Multiset of cross edges keyed by (left index, right index).

    Instances are immutable by convention: every mutation method returns a
    new multiset.  Used both for leaves and residual graphs.
    """

    __slots__ = ("_counts", "_size")

    def __init__(self, counts: Mapping[tuple[int, int], int] | None = None):
        store: dict[tuple[int, int], int] = {}
        if counts:
            for pair, c in counts.items():
                if c < 0:
                    raise ModelError(f"negative multiplicity on {pair}")
                if c:
                    store[(int(pair[0]), int(pair[1]))] = int(c)
        self._counts = store
        self._size = sum(store.values())

    @classmethod
    def empty(cls) -> "EdgeMultiset":
        return cls()

    @classmethod
    def full(cls, spec: GraphSpec) -> "EdgeMultiset":
        return cls({p: spec.lam for p in spec.pairs()})

    @property
    def size(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeMultiset) and self._counts == other._counts

    def __repr__(self) -> str:
        items = ", ".join(f"L{i}R{j}x{c}" for (i, j), c in self.sorted_items())
        return f"EdgeMultiset({items})"

    def mult(self, i: int, j: int) -> int:
        return self._counts.get((i, j), 0)

    def mult_pair(self, x: Vertex, y: Vertex) -> int:
        return self._counts.get(pair_of(x, y), 0)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self._counts.items())

    def sorted_items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self._counts.items())

    def to_dict(self) -> dict[tuple[int, int], int]:
        return dict(self._counts)

    def counts_list(self, v: int, u: int) -> list[int]:
        """Row-major residual vector used by the search kernels."""
        out = [0] * (v * u)
        for (i, j), c in self._counts.items():
            if i >= v or j >= u:
                raise ModelError(f"pair (L{i},R{j}) outside a {v}x{u} grid")
            out[i * u + j] = c
        return out

    def degree(self, x: Vertex) -> int:
        if x.is_left:
            return sum(c for (i, _), c in self._counts.items() if i == x.index)
        return sum(c for (_, j), c in self._counts.items() if j == x.index)

    def degrees(self) -> dict[Vertex, int]:
        """Degree table of every vertex touched by at least one edge."""
        out: dict[Vertex, int] = {}
        for (i, j), c in self._counts.items():
            li, rj = left(i), right(j)
            out[li] = out.get(li, 0) + c
            out[rj] = out.get(rj, 0) + c
        return out

    def active_vertices(self) -> list[Vertex]:
        return sorted(self.degrees())

    def is_simple(self) -> bool:
        return all(c <= 1 for c in self._counts.values())

    def with_deltas(
        self,
        deltas: Iterable[tuple[tuple[int, int], int]],
        cap: int | None = None,
    ) -> "EdgeMultiset":
        """Apply (pair, +-k) adjustments; reject counts outside [0, cap]."""
        counts = dict(self._counts)
        for pair, d in deltas:
            c = counts.get(pair, 0) + d
            if c < 0:
                raise OverfullError(f"multiplicity on {pair} would go negative")
            if cap is not None and c > cap:
                raise OverfullError(f"multiplicity on {pair} would exceed {cap}")
            if c:
                counts[pair] = c
            else:
                counts.pop(pair, None)
        out = EdgeMultiset.__new__(EdgeMultiset)
        out._counts = counts
        out._size = sum(counts.values())
        return out


@dataclass(frozen=True, repr=False)
class Cycle:
    """Closed alternating vertex sequence of even length >= 2 in canonical
    form (least rotation/reflection starting at a left vertex)."""

    vertices: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        _validate_cycle_sequence(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x: Vertex) -> bool:
        return x in self.vertices

    def __repr__(self) -> str:
        return "(" + " ".join(map(repr, self.vertices)) + ")"

    def edge_pairs(self) -> list[tuple[int, int]]:
        """All m edges as pair keys; a 2-cycle yields its pair twice."""
        vs = self.vertices
        m = len(vs)
        return [pair_of(vs[k], vs[(k + 1) % m]) for k in range(m)]

    def edge_deltas(self, sign: int = 1) -> list[tuple[tuple[int, int], int]]:
        return [(p, sign) for p in self.edge_pairs()]


def _validate_cycle_sequence(vs: tuple[Vertex, ...]) -> None:
    m = len(vs)
    if m < 2 or m % 2:
        raise MalformedCycleError(f"cycle length {m} is not an even number >= 2")
    if len(set(vs)) != m:
        raise MalformedCycleError(f"repeated vertex in {vs}")
    for k in range(m):
        if vs[k].part == vs[(k + 1) % m].part:
            raise MalformedCycleError(f"parts do not alternate in {vs}")


def canonicalize_cycle(raw: Iterable[Vertex]) -> Cycle:
    """Build a Cycle from any rotation/reflection of its vertex sequence.

    The canonical representative is the lexicographically least sequence,
    over both orientations and all rotations starting at a left vertex.
    Idempotent on already-canonical input.
    """
    seq = tuple(raw)
    _validate_cycle_sequence(seq)
    m = len(seq)
    best: tuple[Vertex, ...] | None = None
    for oriented in (seq, seq[::-1]):
        for s in range(m):
            if not oriented[s].is_left:
                continue
            cand = oriented[s:] + oriented[:s]
            if best is None or cand < best:
                best = cand
    assert best is not None
    return Cycle(best)


def compute_leave(spec: GraphSpec, cycles: Iterable[Cycle]) -> EdgeMultiset:
    """Multiplicities of the host graph left uncovered by ``cycles``."""
    counts = {p: spec.lam for p in spec.pairs()}
    for c in cycles:
        for p in c.edge_pairs():
            if p not in counts:
                raise OverfullError(f"pair (L{p[0]},R{p[1]}) outside the graph")
            counts[p] -= 1
            if counts[p] < 0:
                raise OverfullError(
                    f"pair (L{p[0]},R{p[1]}) consumed beyond multiplicity {spec.lam}"
                )
    return EdgeMultiset(counts)


@dataclass(frozen=True)
class LengthSeq:
    """Non-decreasing sequence of even cycle lengths >= 2."""

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        for m in self.lengths:
            if m < 2 or m % 2:
                raise ModelError(f"cycle length {m} is not an even number >= 2")
        if any(a > b for a, b in zip(self.lengths, self.lengths[1:])):
            raise ModelError("lengths must be non-decreasing")

    @classmethod
    def of(cls, lengths: Iterable[int]) -> "LengthSeq":
        return cls(tuple(sorted(int(m) for m in lengths)))

    @property
    def t(self) -> int:
        return len(self.lengths)

    @property
    def total(self) -> int:
        return sum(self.lengths)

    def nu(self, k: int) -> int:
        return self.lengths.count(k)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)


@dataclass(frozen=True)
class Packing:
    """Edge-disjoint cycles in the host graph plus the uncovered leave.

    Invariant: the multiset union of all cycle edges plus the leave equals
    ``lam`` copies of every cross pair, exactly.
    """

    spec: GraphSpec
    cycles: tuple[Cycle, ...]
    leave: EdgeMultiset

    @classmethod
    def from_cycles(cls, spec: GraphSpec, cycles: Iterable[Cycle]) -> "Packing":
        cyc = tuple(cycles)
        return cls(spec, cyc, compute_leave(spec, cyc))

    @classmethod
    def empty(cls, spec: GraphSpec) -> "Packing":
        return cls(spec, (), EdgeMultiset.full(spec))

    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def is_decomposition(self) -> bool:
        return self.leave.size == 0


@dataclass(frozen=True)
class LeaveComponent:
    """One connected component of a leave, structurally classified.

    kind "cycle": a single cycle (``cycles`` holds it).
    kind "chain": cycles A_1..A_r where consecutive cycles share exactly one
        vertex (the link) and non-consecutive ones are disjoint; ``links``
        holds the r-1 link vertices in order.
    kind "ring": the cyclic analogue; for r >= 3 ``links`` holds the r
        shared vertices in cyclic order, for r = 2 the two shared vertices.
    kind "other": anything else; only ``pairs`` is meaningful.
    """

    kind: str
    cycles: tuple[Cycle, ...]
    links: tuple[Vertex, ...]
    pairs: tuple[tuple[tuple[int, int], int], ...]

    @property
    def size(self) -> int:
        return sum(c for _, c in self.pairs)

    def vertex_set(self) -> set[Vertex]:
        out: set[Vertex] = set()
        for (i, j), _ in self.pairs:
            out.add(left(i))
            out.add(right(j))
        return out

    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    def edge_multiset(self) -> EdgeMultiset:
        return EdgeMultiset(dict(self.pairs))


@dataclass(frozen=True)
class LeaveStructure:
    components: tuple[LeaveComponent, ...]
    degrees: dict[Vertex, int]

    def nontrivial(self) -> tuple[LeaveComponent, ...]:
        return self.components

    def kinds(self) -> tuple[str, ...]:
        return tuple(sorted(c.kind for c in self.components))


def classify_leave(leave: EdgeMultiset) -> LeaveStructure:
    """Classify every non-trivial leave component as cycle, chain, ring or
    other.  Requires all leave degrees to be even."""
    degrees = leave.degrees()
    for x, d in sorted(degrees.items()):
        if d % 2:
            raise NotEvenError(f"leave degree of {x} is odd ({d})")

    adj: dict[Vertex, set[Vertex]] = {}
    for (i, j), _ in leave.items():
        adj.setdefault(left(i), set()).add(right(j))
        adj.setdefault(right(j), set()).add(left(i))

    seen: set[Vertex] = set()
    comps: list[LeaveComponent] = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], {start}
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    seen.add(y)
                    stack.append(y)
        pairs = {
            (i, j): c
            for (i, j), c in leave.items()
            if left(i) in comp
        }
        comps.append(_classify_component(pairs, degrees))
    return LeaveStructure(tuple(comps), degrees)


def _classify_component(
    pairs: dict[tuple[int, int], int], degrees: dict[Vertex, int]
) -> LeaveComponent:
    pair_items = tuple(sorted(pairs.items()))
    verts = set()
    for (i, j) in pairs:
        verts.add(left(i))
        verts.add(right(j))
    degs = {x: degrees[x] for x in verts}

    if any(d > 4 for d in degs.values()):
        return LeaveComponent(KIND_OTHER, (), (), pair_items)

    if all(d == 2 for d in degs.values()):
        cyc = _trace_single_cycle(pairs)
        return LeaveComponent(KIND_CYCLE, (cyc,), (), pair_items)

    d4 = sorted(x for x, d in degs.items() if d == 4)
    threads = _extract_threads(pairs, set(d4))

    loops: dict[Vertex, list[tuple[Vertex, ...]]] = {x: [] for x in d4}
    link_threads: dict[tuple[Vertex, Vertex], list[tuple[Vertex, ...]]] = {}
    for a, b, path in threads:
        if a == b:
            loops[a].append(path)
        else:
            key = (a, b) if a < b else (b, a)
            link_threads.setdefault(key, []).append(path)

    comp = _match_chain(d4, loops, link_threads, pair_items)
    if comp is None:
        comp = _match_ring(d4, loops, link_threads, pair_items)
    if comp is None:
        comp = LeaveComponent(KIND_OTHER, (), (), pair_items)
    return comp


def _trace_single_cycle(pairs: dict[tuple[int, int], int]) -> Cycle:
    residual = dict(pairs)
    start = min(_vertices_of(pairs))
    seq = [start]
    cur = start
    while True:
        nxt = _least_residual_neighbor(residual, cur)
        _consume(residual, cur, nxt)
        if nxt == start:
            break
        seq.append(nxt)
        cur = nxt
    if any(residual.values()):
        raise ModelError("degree-2 component did not trace to a single cycle")
    return canonicalize_cycle(seq)


def _vertices_of(pairs: dict[tuple[int, int], int]) -> set[Vertex]:
    out: set[Vertex] = set()
    for (i, j), c in pairs.items():
        if c:
            out.add(left(i))
            out.add(right(j))
    return out


def _least_residual_neighbor(residual: dict, x: Vertex) -> Vertex:
    best: Vertex | None = None
    for (i, j), c in residual.items():
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
    if best is None:
        raise ModelError(f"no residual edge at {x}")
    return best


def _consume(residual: dict, x: Vertex, y: Vertex) -> None:
    p = pair_of(x, y)
    residual[p] -= 1


def _extract_threads(
    pairs: dict[tuple[int, int], int], d4: set[Vertex]
) -> list[tuple[Vertex, Vertex, tuple[Vertex, ...]]]:
    """Split a component with degree profile {2,4} into maximal paths whose
    endpoints are degree-4 vertices (loops allowed)."""
    residual = dict(pairs)
    threads = []
    for a in sorted(d4):
        while True:
            try:
                nxt = _least_residual_neighbor(residual, a)
            except ModelError:
                break
            path = [a]
            _consume(residual, a, nxt)
            path.append(nxt)
            cur = nxt
            while cur not in d4:
                nxt = _least_residual_neighbor(residual, cur)
                _consume(residual, cur, nxt)
                path.append(nxt)
                cur = nxt
            threads.append((a, cur, tuple(path)))
    if any(residual.values()):
        raise ModelError("thread extraction left residual edges")
    return threads


def _compose_threads(t1: tuple[Vertex, ...], t2: tuple[Vertex, ...]) -> Cycle:
    """Join two endpoint-sharing threads into one cycle."""
    if t1[0] != t2[0] or t1[-1] != t2[-1]:
        t2 = t2[::-1]
    return canonicalize_cycle(t1[:-1] + t2[::-1][:-1])


def _match_chain(d4, loops, link_threads, pair_items) -> LeaveComponent | None:
    s = len(d4)
    if s == 1:
        p = d4[0]
        if len(loops[p]) == 2 and not link_threads:
            cycles = tuple(
                canonicalize_cycle(path[:-1]) for path in sorted(loops[p])
            )
            return LeaveComponent(KIND_CHAIN, cycles, (p,), pair_items)
        return None
    ends = [x for x in d4 if len(loops[x]) == 1]
    if len(ends) != 2 or any(len(loops[x]) not in (0, 1) for x in d4):
        return None
    if any(len(ts) != 2 for ts in link_threads.values()):
        return None
    if len(link_threads) != s - 1:
        return None
    # Walk the doubled path from the least end.
    order = [min(ends)]
    partner: dict[Vertex, list[Vertex]] = {x: [] for x in d4}
    for (a, b) in link_threads:
        partner[a].append(b)
        partner[b].append(a)
    while len(order) < s:
        cur = order[-1]
        if len(order) >= 2:
            nxts = [y for y in partner[cur] if y != order[-2]]
        else:
            nxts = list(partner[cur])
        if len(nxts) != 1 or nxts[0] in order:
            return None
        order.append(nxts[0])
    cycles = [canonicalize_cycle(loops[order[0]][0][:-1])]
    for a, b in zip(order, order[1:]):
        key = (a, b) if a < b else (b, a)
        t1, t2 = sorted(link_threads[key])
        cycles.append(_compose_threads(t1, t2))
    cycles.append(canonicalize_cycle(loops[order[-1]][0][:-1]))
    return LeaveComponent(KIND_CHAIN, tuple(cycles), tuple(order), pair_items)


def _match_ring(d4, loops, link_threads, pair_items) -> LeaveComponent | None:
    s = len(d4)
    if any(loops[x] for x in d4):
        return None
    if s == 2:
        key = (d4[0], d4[1])
        if list(link_threads) == [key] and len(link_threads[key]) == 4:
            t1, t2, t3, t4 = sorted(link_threads[key])
            cycles = (_compose_threads(t1, t2), _compose_threads(t3, t4))
            return LeaveComponent(KIND_RING, cycles, tuple(d4), pair_items)
        return None
    if s < 3:
        return None
    if len(link_threads) != s or any(len(ts) != 2 for ts in link_threads.values()):
        return None
    partner: dict[Vertex, list[Vertex]] = {x: [] for x in d4}
    for (a, b) in link_threads:
        partner[a].append(b)
        partner[b].append(a)
    if any(len(ps) != 2 for ps in partner.values()):
        return None
    order = [min(d4)]
    order.append(min(partner[order[0]]))
    while len(order) < s:
        cur, prev = order[-1], order[-2]
        nxts = [y for y in partner[cur] if y != prev]
        if len(nxts) != 1 or nxts[0] in order:
            return None
        order.append(nxts[0])
    if order[0] not in partner[order[-1]]:
        return None
    cycles = []
    for k in range(s):
        a, b = order[k], order[(k + 1) % s]
        key = (a, b) if a < b else (b, a)
        t1, t2 = sorted(link_threads[key])
        cycles.append(_compose_threads(t1, t2))
    return LeaveComponent(KIND_RING, tuple(cycles), tuple(order), pair_items)
