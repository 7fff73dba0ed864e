"""Command-line driver.

Exit status: 0 on success, 1 when an exact identity fails, 2 on usage
errors.  ``--output json`` prints one JSON object per result line.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import convergents as cv
from . import hankelmat as hm
from . import lfunction as lf
from . import numeval as ne
from . import seriesqd as sq
from .errors import DomainError, NoConvergence, ParseError, PrecisionExhausted, QDBreakdown, SingularCurve
from .polys import format_rational
from .sweep import run_identity_sweep

PREC_ENV = "QDFRAC_PREC_BITS"


def default_prec() -> int:
    raw = os.environ.get(PREC_ENV)
    if raw is None:
        return 128
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"qdfrac: {PREC_ENV} must be an integer, got {raw!r}") from None
    return value


class Printer:
    def __init__(self, output, stream):
        self.json = output == "json"
        self.stream = stream

    def emit(self, record: dict, text: str):
        if self.json:
            print(json.dumps(record), file=self.stream)
        else:
            print(text, file=self.stream)

    def table(self, header, rows, records):
        if self.json:
            for rec in records:
                print(json.dumps(rec), file=self.stream)
            return
        cols = [header] + [[str(c) for c in row] for row in rows]
        widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
        for row in cols:
            print("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip(), file=self.stream)


def _parse_x(text: str):
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return Fraction(int(text))
    except ValueError:
        return text  # decimal string, read at full working precision


def cmd_qd(args, out):
    tab = sq.qd_table(sq.FactorialSeq, args.depth, args.width)
    records, rows = [], []
    for k in range(tab.depth + 1):
        for n in range(tab.width + 1):
            e = tab.e[k][n]
            q = tab.q[k][n] if k < tab.depth else None
            records.append({"k": k, "n": n, "e": format_rational(e), "q": None if q is None else format_rational(q)})
            rows.append((k, n, format_rational(e), "" if q is None else format_rational(q)))
    out.table(["k", "n", "e_k^(n)", "q_k^(n)"], rows, records)
    return 0


def cmd_cfcoeffs(args, out):
    cf = sq.cf_coeffs(sq.FactorialSeq, args.k)
    d = [format_rational(v) for v in cf.d]
    out.emit({"k": args.k, "d": d}, "d = " + " ".join(d))
    return 0


def cmd_hankel(args, out):
    rows, records = [], []
    for k in range(1, args.kmax + 1):
        det = hm.det_A(k)
        h1 = hm.h1_offset_det(k) if k >= 2 else None
        minors = [hm.minor_A(k, k, m) for m in range(1, k + 1)] if k >= 2 else []
        rows.append(
            (
                k,
                format_rational(det),
                "" if h1 is None else format_rational(h1),
                " ".join(format_rational(m) for m in minors),
            )
        )
        records.append(
            {
                "k": k,
                "det_A": format_rational(det),
                "H_km1_1": None if h1 is None else format_rational(h1),
                "last_row_minors": [format_rational(m) for m in minors],
            }
        )
    out.table(["k", "det A^(k-1)", "H_{k-1}^(1)", "minors (k, m), m=1..k"], rows, records)
    return 0


def cmd_convergents(args, out):
    table = cv.convergent_table(args.n)
    status = 0
    for n in range(1, args.n + 1):
        p, q = table[n]
        half, parity = (n + 1) // 2, ("odd" if n % 2 else "even")
        cp, cq = cv.closed_form_P(half, parity), cv.closed_form_Q(half, parity)
        match = cp == p and cq == q
        status |= not match
        out.emit(
            {"n": n, "P": str(p), "Q": str(q), "P_closed": str(cp), "Q_closed": str(cq), "match": match},
            f"n={n}\n  P   = {p}\n  P'  = {cp}\n  Q   = {q}\n  Q'  = {cq}\n  {'match' if match else 'MISMATCH'}",
        )
    return 1 if status else 0


def cmd_identities(args, out):
    failed = 0
    for res in run_identity_sweep(args.kmax):
        failed += not res.ok
        text = f"{'ok  ' if res.ok else 'FAIL'}  {res.family}  [{res.checked} checks]"
        if res.detail:
            text += f"  {res.detail}"
        out.emit({"family": res.family, "ok": res.ok, "checked": res.checked, "detail": res.detail}, text)
    if failed:
        out.emit({"summary": "failed", "failures": failed}, f"{failed} identity families FAILED")
        return 1
    out.emit({"summary": "ok", "kmax": args.kmax}, "all identities hold exactly")
    return 0


def cmd_e1(args, out):
    x = _parse_x(args.x)
    reports = [
        ne.e1_series(x, args.prec),
        ne.e1_cf(x, depth=args.depth, prec_bits=args.prec),
        ne.e1_quadrature(x, args.prec),
    ]
    for rep in reports:
        out.emit(rep.as_dict(), rep.line())
    return 0


def cmd_fm(args, out):
    x = _parse_x(args.x)
    ratios = ne.f_iteration(x, args.terms, args.prec)
    rows, records = [], []
    for j, rho in ratios:
        label = f"F_{j}/x" if j % 2 else f"{j // 2}*F_{j}"
        dev = abs(rho - 1)
        rows.append((j, label, f"{float(rho):.12f}", f"{float(dev):.3e}"))
        records.append({"j": j, "ratio": label, "value": str(rho), "deviation": str(dev)})
    out.table(["j", "ratio", "value", "|value-1|"], rows, records)
    return 0


def cmd_lprime(args, out):
    curve = lf.load_curve(args.curve) if args.curve else lf.bundled_curve("37a")
    start = time.perf_counter()
    table = lf.an_table(curve, args.terms, workers=args.workers)
    value, tail = lf.lprime_approx(curve, args.terms, args.prec, method=args.method, table=table)
    elapsed = time.perf_counter() - start
    tail_text = format(float(tail), ".3e")
    out.emit(
        {
            "curve": curve.label,
            "N": curve.N,
            "T": args.terms,
            "lprime": str(value),
            "tail_bound": tail_text,
            "prec_bits": args.prec,
            "seconds": round(elapsed, 3),
        },
        f"curve={curve.label} N={curve.N} T={args.terms} L'(E,1)={value} tail<={tail_text} time={elapsed:.2f}s",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    prec = default_prec()
    parser = argparse.ArgumentParser(prog="qdfrac", description="Continued fraction of e^x E1(x): exact and numeric tools.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("table", "json"), default="table")
    common.add_argument("--prec", type=int, default=prec, help=f"precision in bits (default {prec}; env {PREC_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qd", parents=[common], help="QD tableau of the factorial series")
    p.add_argument("--depth", "--kmax", dest="depth", type=int, default=4)
    p.add_argument("--width", "--n", dest="width", type=int, default=4)
    p.set_defaults(func=cmd_qd)

    p = sub.add_parser("cfcoeffs", parents=[common], help="continued-fraction coefficients d_0..d_2k")
    p.add_argument("--k", "--depth", "--kmax", dest="k", type=int, default=3)
    p.set_defaults(func=cmd_cfcoeffs)

    p = sub.add_parser("hankel", parents=[common], help="determinants and minors of A^(k-1)")
    p.add_argument("--kmax", type=int, default=6)
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("convergents", parents=[common], help="P_n, Q_n by recurrence and in closed form")
    p.add_argument("--n", "--kmax", dest="n", type=int, default=6)
    p.set_defaults(func=cmd_convergents)

    p = sub.add_parser("identities", parents=[common], help="sweep every exact identity")
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("e1", parents=[common], help="E1(x) by series, continued fraction and quadrature")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, default=None, help="starting continued-fraction depth")
    p.set_defaults(func=cmd_e1)

    p = sub.add_parser("fm", parents=[common], help="normalized ratios of the expansion at infinity")
    p.add_argument("--x", default="1000")
    p.add_argument("--terms", type=int, default=4, help="m_max")
    p.set_defaults(func=cmd_fm)

    p = sub.add_parser("lprime", parents=[common], help="L'(E,1) from point counts")
    p.add_argument("--curve", default=None, help="curve file (default: bundled 37a)")
    p.add_argument("--terms", type=int, default=1000, help="number of Dirichlet terms T")
    p.add_argument("--method", choices=("auto", "series", "cf", "quadrature"), default="auto")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_lprime)
    return parser


def run(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Printer(args.output, stream)
    try:
        return args.func(args, out)
    except (ValueError, IndexError, DomainError, ParseError, SingularCurve, OSError) as exc:
        print(f"qdfrac: error: {exc}", file=sys.stderr)
        return 2
    except (QDBreakdown, NoConvergence, PrecisionExhausted, AssertionError) as exc:
        print(f"qdfrac: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
