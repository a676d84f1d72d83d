"""Command-line interface: check, decompose, verify, oracle, sweep."""

from __future__ import annotations

import argparse
import json
import sys

from . import certify, constructor, oracle
from .conditions import check_constructive_hypotheses, check_necessary
from .model import GraphSpec, LengthSeq
from .switching import SwitchLog

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_SOFT = 3  # timeout or constructive gap


def _parse_m(raw: str) -> LengthSeq:
    try:
        parts = [int(tok) for tok in raw.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad length list {raw!r}")
    if not parts:
        raise argparse.ArgumentTypeError("empty length list")
    if parts != sorted(parts):
        print("note: lengths reordered to be non-decreasing", file=sys.stderr)
    try:
        return LengthSeq.of(parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_instance_args(sp: argparse.ArgumentParser, with_m: bool = True) -> None:
    sp.add_argument("--lambda", dest="lam", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--u", type=int, required=True)
    if with_m:
        sp.add_argument("--m", type=_parse_m, required=True)


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("text", "machine"), default="text")
    sp.add_argument("--trace", action="store_true")


def _mk_log(args) -> SwitchLog | None:
    if getattr(args, "trace", False):
        return SwitchLog(sink=lambda line: print(line, file=sys.stderr))
    return None


def _budget(args) -> float | None:
    b = getattr(args, "budget", None)
    if b is not None:
        return b
    return oracle.default_budget()


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "machine":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _write_cert(args, spec: GraphSpec, cycles) -> None:
    doc = certify.dump_certificate(spec, cycles)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)


def cmd_check(args) -> int:
    spec = GraphSpec(args.lam, args.v, args.u)
    nec = check_necessary(spec, args.m)
    cov = check_constructive_hypotheses(spec, args.m)
    payload = {
        "necessary": {"ok": nec.ok, "label": nec.label, "detail": nec.detail},
        "covered": {"ok": cov.ok, "label": cov.label, "detail": cov.detail},
    }
    text = f"necessary: {nec}\nconstructive: {'covered' if cov else cov}"
    _emit(args, payload, text)
    return EXIT_OK if nec.ok and cov.ok else EXIT_NO


def cmd_decompose(args) -> int:
    spec = GraphSpec(args.lam, args.v, args.u)
    log = _mk_log(args)
    try:
        p = constructor.decompose(spec, args.m, budget=_budget(args), log=log)
        _write_cert(args, spec, p.cycles)
        return EXIT_OK
    except constructor.NotCoveredError as exc:
        soft, why = EXIT_NO, f"not-covered: {exc}"
    except constructor.ConstructiveGapError as exc:
        soft, why = EXIT_SOFT, f"constructive-gap: {exc}"
    if not args.allow_oracle:
        print(why, file=sys.stderr)
        return soft
    print(f"{why}; falling back to exact search", file=sys.stderr)
    res = oracle.oracle_decide(spec, args.m, budget=_budget(args))
    if res.status == oracle.EXISTS:
        _write_cert(args, spec, res.certificate)
        return EXIT_OK
    payload = {
        "status": res.status,
        "lambda": spec.lam,
        "v": spec.v,
        "u": spec.u,
        "M": list(args.m.lengths),
        "nodes": res.nodes,
    }
    _emit(args, payload, f"{res.status} (nodes={res.nodes})")
    return EXIT_NO if res.status == oracle.NOT_EXISTS else EXIT_SOFT


def cmd_verify(args) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            spec, cycles, M = certify.load_certificate(fh.read())
    except (OSError, ValueError) as exc:
        _emit(args, {"ok": False, "reason": str(exc)}, f"invalid: {exc}")
        return EXIT_NO
    res = certify.verify_decomposition(spec, cycles, M)
    _emit(args, {"ok": res.ok, "reason": res.reason}, str(res))
    return EXIT_OK if res.ok else EXIT_NO


def cmd_oracle(args) -> int:
    spec = GraphSpec(args.lam, args.v, args.u)
    if args.m is not None:
        res = oracle.oracle_decide(spec, args.m, budget=_budget(args))
        if res.status == oracle.EXISTS:
            _write_cert(args, spec, res.certificate)
            return EXIT_OK
        payload = {
            "status": res.status,
            "lambda": spec.lam,
            "v": spec.v,
            "u": spec.u,
            "M": list(args.m.lengths),
            "nodes": res.nodes,
            "elapsed": round(res.elapsed, 6),
        }
        _emit(args, payload, f"{res.status} (nodes={res.nodes})")
        return EXIT_NO if res.status == oracle.NOT_EXISTS else EXIT_SOFT
    rows = oracle.oracle_enumerate(spec, budget=_budget(args))
    payload_rows = [
        {"M": list(M.lengths), "status": res.status, "nodes": res.nodes}
        for M, res in rows
    ]
    if args.format == "machine":
        print(json.dumps(payload_rows, sort_keys=True))
    else:
        for row in payload_rows:
            print(f"{','.join(map(str, row['M'])):24s} {row['status']}")
    return EXIT_SOFT if any(r.status == oracle.TIMEOUT for _, r in rows) else EXIT_OK


def cmd_sweep(args) -> int:
    budget = _budget(args) or 5.0
    rows = []
    timeouts = False
    for lam in range(1, args.lambda_max + 1):
        for v in range(1, args.vu_max + 1):
            for u in range(v, args.vu_max + 1):
                spec = GraphSpec(lam, v, u)
                for parts in oracle.even_partitions(spec.edge_count):
                    M = LengthSeq(parts)
                    nec = check_necessary(spec, M)
                    cov = check_constructive_hypotheses(spec, M)
                    construct = "n/a"
                    if cov.ok:
                        try:
                            constructor.decompose(spec, M, budget=budget)
                            construct = "ok"
                        except constructor.ConstructiveGapError:
                            construct = "gap"
                    dec = "skipped"
                    if spec.edge_count <= args.oracle_cap and (
                        args.allow_oracle or construct in ("gap", "n/a")
                    ):
                        res = oracle.oracle_decide(spec, M, budget=budget)
                        dec = res.status
                        timeouts |= dec == oracle.TIMEOUT
                    rows.append(
                        {
                            "lambda": lam,
                            "v": v,
                            "u": u,
                            "M": list(M.lengths),
                            "necessary": str(nec),
                            "covered": cov.ok,
                            "construct": construct,
                            "oracle": dec,
                        }
                    )
    if args.format == "machine":
        for row in rows:
            print(json.dumps(row, sort_keys=True))
    else:
        for row in rows:
            mtxt = ",".join(map(str, row["M"]))
            print(
                f"lam={row['lambda']} v={row['v']} u={row['u']} "
                f"M={mtxt:20s} necessary={row['necessary']:10s} "
                f"covered={str(row['covered']):5s} "
                f"construct={row['construct']:3s} oracle={row['oracle']}"
            )
    return EXIT_SOFT if timeouts else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cycdec",
        description=(
            "Partition the edges of a complete bipartite multigraph into "
            "cycles of prescribed even lengths, and verify such partitions."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="evaluate feasibility conditions")
    _add_instance_args(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="construct a certificate")
    _add_instance_args(sp)
    _add_common(sp)
    sp.add_argument("--allow-oracle", action="store_true")
    sp.add_argument("--budget", type=float, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="verify a certificate file")
    sp.add_argument("--cert", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exact decide/enumerate by search")
    _add_instance_args(sp, with_m=False)
    sp.add_argument("--m", type=_parse_m, default=None)
    sp.add_argument("--budget", type=float, default=None)
    sp.add_argument("--out", default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("sweep", help="census over small instances")
    sp.add_argument("--lambda-max", dest="lambda_max", type=int, required=True)
    sp.add_argument("--vu-max", dest="vu_max", type=int, required=True)
    sp.add_argument("--budget", type=float, default=None)
    sp.add_argument("--oracle-cap", type=int, default=24)
    sp.add_argument("--allow-oracle", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
