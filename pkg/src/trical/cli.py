"""Command-line interface: ``trical list | verify | verify-all | expand | triangle | asym``."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .certificate import ERROR, FAIL, PASS, emit_certificate
from .registry import (DEFAULT_LMAX, DEFAULT_ORDER, certificate_name, desk_jobs,
                       get_identity, list_identities, verify_identity)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"expected k=v, got {item!r}")
        out[key] = _parse_value(value)
    return out


def _exit_code(status: str) -> int:
    return {PASS: EXIT_PASS, FAIL: EXIT_FAIL}.get(status, EXIT_ERROR)


def _summary(cert) -> str:
    params = ",".join(f"{k}={cert.params[k]}" for k in sorted(cert.params))
    line = f"{cert.status:5s} {cert.identity_id} [{params}]"
    if cert.mismatch:
        m = cert.mismatch
        line += f" first mismatch at q^({m['exponent_quarters']}/4): {m['lhs_coeff']} vs {m['rhs_coeff']}"
    if cert.detail:
        line += f" ({cert.detail})"
    return line


def cmd_list(args) -> int:
    for d in list_identities():
        print(f"{d.id}\t{d.mode}\t{d.schema()}\t{d.description}")
    return EXIT_PASS


def cmd_verify(args) -> int:
    try:
        get_identity(args.id)
        params = _parse_params(args.param)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    cert = verify_identity(args.id, params, order=args.order, lmax=args.lmax)
    print(_summary(cert))
    if args.cert:
        emit_certificate(cert, args.cert)
    return _exit_code(cert.status)


def _run_job(job):
    identity_id, params, lmax = job
    return verify_identity(identity_id, params, lmax=lmax)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TRICAL_JOBS", "1")))
    except ValueError:
        return 1


def cmd_verify_all(args) -> int:
    jobs = desk_jobs()
    workers = args.jobs if args.jobs is not None else default_jobs()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_run_job, jobs, chunksize=4))
    else:
        certs = [_run_job(j) for j in jobs]
    if args.cert_dir:
        out = Path(args.cert_dir)
        out.mkdir(parents=True, exist_ok=True)
        for (identity_id, params, _), cert in zip(jobs, certs):
            emit_certificate(cert, out / certificate_name(identity_id, params))
    counts = {PASS: 0, FAIL: 0, ERROR: 0}
    for cert in certs:
        counts[cert.status] = counts.get(cert.status, 0) + 1
        if cert.status != PASS or args.verbose:
            print(_summary(cert))
    print(f"{len(certs)} instances: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    if counts.get(ERROR):
        return EXIT_ERROR
    return EXIT_FAIL if counts.get(FAIL) else EXIT_PASS


def cmd_expand(args) -> int:
    from .named_series import named_series
    try:
        series, note = named_series(args.series_id, args.order)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if note:
        print(note, file=sys.stderr)
    for e, c in series.items():
        print(f"{e}\t{c}")
    return EXIT_PASS


def cmd_triangle(args) -> int:
    from .qfunctions import classical_trinomial
    for L in range(args.rows):
        print(" ".join(str(classical_trinomial(L, A)) for A in range(-L, L + 1)))
    return EXIT_PASS


def cmd_asym(args) -> int:
    from .asymptotics import TailBoundError, asymptotic_check_331
    try:
        r = asymptotic_check_331(args.t, args.order)
    except (TailBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"t\t{r.t!r}\nlhs\t{r.lhs_value!r}\nrhs\t{r.rhs_value!r}\nratio\t{r.ratio!r}\ntail_bound\t{r.tail_bound!r}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trical", description="Verify q-trinomial identities exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print registry ids and parameter schemas").set_defaults(func=cmd_list)

    p = sub.add_parser("verify", help="verify one identity instance")
    p.add_argument("id")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("--order", type=int, default=None,
                   help=f"series order in quarter-units of q (default {DEFAULT_ORDER})")
    p.add_argument("--lmax", type=int, default=None,
                   help=f"largest L for polynomial identities without an explicit L (default {DEFAULT_LMAX})")
    p.add_argument("--cert", default=None, metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="run the whole desk-scale suite")
    p.add_argument("--suite", choices=["desk"], default="desk")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $TRICAL_JOBS or 1)")
    p.add_argument("--cert-dir", default=None)
    p.add_argument("-v", "--verbose", action="store_true", help="also print passing instances")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("expand", help="print coefficients of a named series")
    p.add_argument("series_id")
    p.add_argument("--order", type=int, required=True, help="order in quarter-units of q")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("triangle", help="print the q = 1 trinomial triangle")
    p.add_argument("--rows", type=int, required=True)
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("asym", help="compare the half-base double sum with its asymptotic form")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--order", type=int, default=8000, help="order in quarter-units of q (default 8000)")
    p.set_defaults(func=cmd_asym)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
