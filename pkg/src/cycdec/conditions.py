"""Arithmetic feasibility checks for prescribed cycle-length sequences.

``check_necessary`` evaluates the conditions every decomposition must meet;
``check_constructive_hypotheses`` decides whether the constructive pipeline
covers an instance.  Both are total functions returning verdicts with the
violated inequality spelled out (both sides evaluated) for census reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import GraphSpec, LengthSeq


@dataclass(frozen=True)
class Verdict:
    ok: bool
    label: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return f"fail({self.label}): {self.detail}"


def nu_count(M: LengthSeq, k: int) -> int:
    """Number of occurrences of k in M."""
    return M.nu(k)


def check_necessary(spec: GraphSpec, M: LengthSeq) -> Verdict:
    """Conditions that any decomposition of the host graph must satisfy.

    Checked in order: total edge count; (a) longest cycle fits the
    bipartition; (b) even degrees; (c) cycle-count bound for even lam;
    (d) doubled-pair budget for odd lam.  The first violation is reported.
    """
    lam, v, u = spec.lam, spec.v, spec.u
    if M.total != lam * v * u:
        return Verdict(False, "sum", f"sum(M) = {M.total} != {lam * v * u} = lam*v*u")
    mt = M.lengths[-1]
    lim = 2 * min(v, u)
    if mt > lim:
        return Verdict(False, "a", f"m_t = {mt} > {lim} = 2*min(v,u)")
    if (lam * v) % 2 or (lam * u) % 2:
        return Verdict(
            False, "b", f"lam*v = {lam * v}, lam*u = {lam * u} not both even"
        )
    if lam % 2 == 0:
        bound = (lam // 2) * v * u - mt + 2
        if M.t > bound:
            return Verdict(False, "c", f"t = {M.t} > {bound} = (lam/2)*v*u - m_t + 2")
    else:
        if 2 * M.nu(2) > (lam - 1) * v * u:
            return Verdict(
                False,
                "d",
                f"2*nu_2(M) = {2 * M.nu(2)} > {(lam - 1) * v * u} = (lam-1)*v*u",
            )
    return Verdict(True)


def check_constructive_hypotheses(spec: GraphSpec, M: LengthSeq) -> Verdict:
    """Whether the constructive pipeline covers (spec, M).

    Parts are normalized so the smaller one plays v.  The doubled-pair
    budget 2*nu_2(M) <= (lam-1)*v*u is applied for every lam, not only odd
    lam, matching the hypothesis list the driver needs.
    """
    lam = spec.lam
    v, u = min(spec.v, spec.u), max(spec.v, spec.u)
    if M.total != lam * v * u:
        return Verdict(False, "sum", f"sum(M) = {M.total} != {lam * v * u} = lam*v*u")
    if M.t < 2:
        return Verdict(False, "t", f"t = {M.t} < 2")
    if v < 5:
        return Verdict(False, "small-part", f"min(v,u) = {v} < 5")
    if (lam * v) % 2 or (lam * u) % 2:
        return Verdict(
            False, "parity", f"lam*v = {lam * v}, lam*u = {lam * u} not both even"
        )
    mt, mt1 = M.lengths[-1], M.lengths[-2]
    if mt > 3 * mt1:
        return Verdict(False, "ratio", f"m_t = {mt} > {3 * mt1} = 3*m_(t-1)")
    if lam % 2 == 0:
        bound = (lam // 2) * v * u - mt + 2
        if M.t > bound:
            return Verdict(
                False, "count", f"t = {M.t} > {bound} = (lam/2)*v*u - m_t + 2"
            )
    if 2 * M.nu(2) > (lam - 1) * v * u:
        return Verdict(
            False,
            "two-cycles",
            f"2*nu_2(M) = {2 * M.nu(2)} > {(lam - 1) * v * u} = (lam-1)*v*u",
        )
    pair_bound = 2 * v + 2 if v < u else 2 * v
    if mt1 + mt > pair_bound:
        return Verdict(
            False,
            "pair-sum",
            f"m_(t-1)+m_t = {mt1 + mt} > {pair_bound} = "
            + ("2v+2" if v < u else "2v"),
        )
    return Verdict(True, "covered")
