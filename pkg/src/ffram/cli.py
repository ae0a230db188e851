"""Command-line front end: ``ffram [--p P --t T --psi POLY --json] <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import ArithError, arith_fn
from .charsums import eta_direct, eta_formula, fourier_coeff, s_conv
from .cyclotomic import CycQ
from .dirichlet import (dh_series, identity1_check, identity2_check, zeta_series)
from .field import FieldError, field_make
from .poly import ParseError, Poly, parse_poly
from .verify import (THEOREMS, SweepConfig, SweepError, emit_table, report_json, table_csv,
                     table_json, verify_theorem)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _value_str(v) -> str:
    if isinstance(v, CycQ):
        return str(v.as_rational()) if v.is_rational() else str(v)
    return str(Fraction(v))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffram",
                                 description="Ramanujan-type sums over F_q[X], exact arithmetic.")
    ap.add_argument("--p", type=int, default=2, help="characteristic (prime), default 2")
    ap.add_argument("--t", type=int, default=1, help="extension degree, q = p^t, default 1")
    ap.add_argument("--psi", help="monic irreducible of degree t over F_p, e.g. 'X^2+X+1'")
    ap.add_argument("--json", action="store_true", help="JSON output")
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="command")

    s = sub.add_parser("eval", help="evaluate an arithmetical function at a monic polynomial")
    s.add_argument("fn")
    s.add_argument("poly")

    s = sub.add_parser("eta", help="Ramanujan sum eta(h, f)")
    s.add_argument("h")
    s.add_argument("f")
    s.add_argument("--direct", action="store_true",
                   help="also compute the character sum directly")

    s = sub.add_parser("s-conv", help="S(h; f) = sum over g | (h, f) of G(g) H(f/g)")
    for name in ("G", "H", "h", "f"):
        s.add_argument(name)

    s = sub.add_parser("fourier", help="finite Fourier coefficient a_f(g)")
    for name in ("G", "H", "f", "g"):
        s.add_argument(name)

    s = sub.add_parser("verify", help="exhaustive sweep of an identity, or 'all'")
    s.add_argument("theorem", choices=THEOREMS + ("all",), metavar="theorem")
    s.add_argument("--max-deg-f", type=int)
    s.add_argument("--max-deg-h", type=int)
    s.add_argument("--N", type=int)
    s.add_argument("--pair", action="append", metavar="G,H",
                   help="function pair; repeatable")
    s.add_argument("--self-test", action="store_true",
                   help="perturb the right-hand side by one unit so the sweep must fail")
    s.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")
    s.add_argument("--max-failures", type=int, help="cap on listed failures")

    s = sub.add_parser("series", help="truncated Dirichlet series checks")
    s.add_argument("check", choices=("zeta", "dh", "identity1", "identity2", "inverse"))
    s.add_argument("--G", default="norm")
    s.add_argument("--H", default="mu")
    s.add_argument("--f", default="X")
    s.add_argument("--h", default="X")
    s.add_argument("--N", type=int, default=6)

    s = sub.add_parser("table", help="emit a CSV (or JSON) table")
    s.add_argument("what", choices=("eta", "phi", "coeffs"))
    s.add_argument("--f", help="single modulus instead of all monics up to --max-deg-f")
    s.add_argument("--max-deg-f", type=int, default=2)
    s.add_argument("--min-deg-h", type=int, default=0)
    s.add_argument("--max-deg-h", type=int, default=2)
    s.add_argument("--G", default="norm")
    s.add_argument("--H", default="mu")
    s.add_argument("--float", action="store_true", help="add float columns")
    return ap


def _psi(p: int, text: str | None):
    if text is None:
        return None
    return parse_poly(field_make(p), text).coeffs


def _monic(ctx, text: str) -> Poly:
    f = parse_poly(ctx, text)
    if f.is_zero() or not f.is_monic():
        raise UsageError(f"{text!r} must be a monic polynomial")
    return f


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def _pairs(raw):
    if not raw:
        return None
    out = []
    for item in raw:
        parts = item.split(",")
        if len(parts) != 2 or not all(parts):
            raise UsageError(f"--pair expects G,H, got {item!r}")
        out.append((parts[0], parts[1]))
    return out


def _cmd_verify(args, ctx) -> int:
    names = THEOREMS if args.theorem == "all" else (args.theorem,)
    pairs = _pairs(args.pair)
    for fn in {x for pr in pairs or () for x in pr}:
        arith_fn(ctx, fn)  # fail fast on unknown tokens
    reports = []
    for name in names:
        cfg = SweepConfig(name, p=args.p, t=args.t, psi=ctx.psi if ctx.t > 1 else None,
                          max_deg_f=args.max_deg_f, max_deg_h=args.max_deg_h, N=args.N,
                          pairs=pairs, self_test=args.self_test,
                          timing=not args.no_timing, max_failures=args.max_failures)
        reports.append(verify_theorem(cfg))
    if args.json:
        print(report_json(reports[0] if len(reports) == 1 else reports))
    else:
        for r in reports:
            print(r.summary())
            for fl in r.failures:
                print(f"  {json.dumps(fl.inputs, sort_keys=True)}  lhs={fl.lhs}  rhs={fl.rhs}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_series(args, ctx) -> int:
    N = args.N
    if N < 0:
        raise UsageError("--N must be >= 0")
    G, H = arith_fn(ctx, args.G), arith_fn(ctx, args.H)
    if args.check in ("zeta", "dh"):
        s = zeta_series(ctx, N) if args.check == "zeta" else dh_series(H, ctx, N)
        _emit(args, s.to_json(), str(s))
        return EXIT_OK
    if args.check == "inverse":
        lhs = dh_series(arith_fn(ctx, "mu"), ctx, N) * zeta_series(ctx, N)
        rhs = type(lhs).from_terms(ctx.q, N, {0: 1})
    elif args.check == "identity1":
        lhs, rhs, _ = identity1_check(G, H, _monic(ctx, args.f), N)
    else:
        lhs, rhs, _ = identity2_check(G, H, _monic(ctx, args.h), N)
    ok = lhs == rhs
    _emit(args, {"check": args.check, "lhs": lhs.to_json(), "rhs": rhs.to_json(), "equal": ok},
          f"lhs = {lhs}\nrhs = {rhs}\n{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_table(args, ctx) -> int:
    f = _monic(ctx, args.f) if args.f else None
    rows = emit_table(args.what, ctx, f=f, max_deg_f=args.max_deg_f, min_deg_h=args.min_deg_h,
                      max_deg_h=args.max_deg_h, G=args.G, H=args.H, with_float=args.float)
    sys.stdout.write(table_json(rows) + "\n" if args.json else table_csv(rows))
    return EXIT_OK


def _dispatch(args) -> int:
    ctx = field_make(args.p, args.t, _psi(args.p, args.psi))
    cmd = args.cmd
    if cmd == "eval":
        f = _monic(ctx, args.poly)
        v = arith_fn(ctx, args.fn)(f)
        _emit(args, {"fn": args.fn, "f": str(f), "value": str(v)}, str(v))
    elif cmd == "eta":
        h, f = parse_poly(ctx, args.h), parse_poly(ctx, args.f)
        v = eta_formula(h, f)
        payload = {"h": str(h), "f": str(f), "eta": str(v)}
        text = str(v)
        if args.direct:
            d = _value_str(eta_direct(h, f))
            payload["direct"] = d
            text += f"\ndirect: {d}"
        _emit(args, payload, text)
    elif cmd == "s-conv":
        G, H = arith_fn(ctx, args.G), arith_fn(ctx, args.H)
        h, f = parse_poly(ctx, args.h), _monic(ctx, args.f)
        v = s_conv(G, H, h, f)
        _emit(args, {"G": args.G, "H": args.H, "h": str(h), "f": str(f), "S": str(v)}, str(v))
    elif cmd == "fourier":
        G, H = arith_fn(ctx, args.G), arith_fn(ctx, args.H)
        f, g = _monic(ctx, args.f), parse_poly(ctx, args.g)
        v = fourier_coeff(G, H, f, g)
        _emit(args, {"G": args.G, "H": args.H, "f": str(f), "g": str(g), "a": str(v)}, str(v))
    elif cmd == "verify":
        return _cmd_verify(args, ctx)
    elif cmd == "series":
        return _cmd_series(args, ctx)
    elif cmd == "table":
        return _cmd_table(args, ctx)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (FieldError, ParseError, ArithError, SweepError, UsageError,
            ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


cli_dispatch = main
