"""Independent certificate verification and the certificate file format.

The verifier accumulates edge counts on its own (it shares no bookkeeping
code with the constructive side) so that constructor defects cannot hide.

Certificate schema (UTF-8 JSON, no floats):
  {"lambda": int, "v": int, "u": int, "M": [int, ...],
   "cycles": [[["L", i] | ["R", j], ...], ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    Cycle,
    GraphSpec,
    LengthSeq,
    LEFT,
    RIGHT,
    Packing,
    Vertex,
    canonicalize_cycle,
)


@dataclass(frozen=True)
class CertifyResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else f"invalid: {self.reason}"


def _check_cycle_shape(vs: Sequence[Vertex]) -> str | None:
    m = len(vs)
    if m < 2 or m % 2:
        return f"cycle length {m} is not an even number >= 2"
    if len(set(vs)) != m:
        return f"repeated vertex in {tuple(vs)}"
    for k in range(m):
        a, b = vs[k], vs[(k + 1) % m]
        if a.part == b.part:
            return f"parts do not alternate in {tuple(vs)}"
    return None


def _accumulate(spec: GraphSpec, cycles: Iterable[Cycle]) -> tuple[dict, str | None]:
    counts: dict[tuple[int, int], int] = {}
    for c in cycles:
        vs = c.vertices
        bad = _check_cycle_shape(vs)
        if bad:
            return counts, bad
        m = len(vs)
        for k in range(m):
            a, b = vs[k], vs[(k + 1) % m]
            i, j = (a.index, b.index) if a.part == LEFT else (b.index, a.index)
            if i >= spec.v or j >= spec.u:
                return counts, f"vertex pair (L{i},R{j}) outside the graph"
            counts[(i, j)] = counts.get((i, j), 0) + 1
    return counts, None


def verify_decomposition(
    spec: GraphSpec, cycles: Sequence[Cycle], M: LengthSeq
) -> CertifyResult:
    """Is `cycles` an exact partition of the host graph with lengths M?"""
    counts, bad = _accumulate(spec, cycles)
    if bad:
        return CertifyResult(False, bad)
    for i in range(spec.v):
        for j in range(spec.u):
            c = counts.get((i, j), 0)
            if c != spec.lam:
                return CertifyResult(
                    False, f"pair (L{i},R{j}) covered {c} of {spec.lam}"
                )
    got = tuple(sorted(len(c) for c in cycles))
    if got != M.lengths:
        return CertifyResult(
            False, f"length multiset {got} != claimed {M.lengths}"
        )
    assert sum(M.lengths) == spec.edge_count  # consequence of exact cover
    return CertifyResult(True)


def verify_packing(p: Packing) -> CertifyResult:
    """Cycle well-formedness plus cycles + leave == lam copies of every pair."""
    counts, bad = _accumulate(p.spec, p.cycles)
    if bad:
        return CertifyResult(False, bad)
    for i in range(p.spec.v):
        for j in range(p.spec.u):
            c = counts.get((i, j), 0) + p.leave.mult(i, j)
            if c != p.spec.lam:
                return CertifyResult(
                    False,
                    f"pair (L{i},R{j}): cycles+leave = {c} != {p.spec.lam}",
                )
    return CertifyResult(True)


def certificate_dict(spec: GraphSpec, cycles: Sequence[Cycle]) -> dict:
    return {
        "lambda": spec.lam,
        "v": spec.v,
        "u": spec.u,
        "M": sorted(len(c) for c in cycles),
        "cycles": [
            [[x.part, x.index] for x in c.vertices] for c in cycles
        ],
    }


def dump_certificate(spec: GraphSpec, cycles: Sequence[Cycle]) -> str:
    return json.dumps(certificate_dict(spec, cycles), sort_keys=True) + "\n"


def load_certificate(text: str) -> tuple[GraphSpec, tuple[Cycle, ...], LengthSeq]:
    """Parse and structurally validate a certificate document."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("certificate must be a JSON object")
    for key in ("lambda", "v", "u", "M", "cycles"):
        if key not in doc:
            raise ValueError(f"certificate missing field {key!r}")
    for key in ("lambda", "v", "u"):
        if not isinstance(doc[key], int):
            raise ValueError(f"certificate field {key!r} must be an integer")
    spec = GraphSpec(doc["lambda"], doc["v"], doc["u"])
    if not isinstance(doc["M"], list) or not all(isinstance(m, int) for m in doc["M"]):
        raise ValueError("certificate field 'M' must be a list of integers")
    cycles = []
    for raw in doc["cycles"]:
        vs = []
        for entry in raw:
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or entry[0] not in (LEFT, RIGHT)
                or not isinstance(entry[1], int)
            ):
                raise ValueError(f"bad vertex encoding {entry!r}")
            vs.append(Vertex(entry[0], entry[1]))
        cycles.append(canonicalize_cycle(vs))
    return spec, tuple(cycles), LengthSeq.of(doc["M"])
