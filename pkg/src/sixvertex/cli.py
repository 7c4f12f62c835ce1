"""Command-line interface: ``sixvertex <command> ...``.

Exit codes: 0 success, 1 a failed check or computation, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import mpmath

from . import asymptotics as asy
from . import enumerator, hankel, verify
from .core_model import DEFAULT_PRECISION_BITS, PhaseParams, parse_real, weights_from_params
from .errors import ResourceLimitError, SixVertexError
from .special import ThetaContext, theta, theta1_prime0

PLAIN_DIGITS = 15


class UsageError(Exception):
    pass


def _default_bits():
    env = os.environ.get("SIXVERTEX_PRECISION_BITS")
    if env is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(env)
    except ValueError:
        raise UsageError(f"SIXVERTEX_PRECISION_BITS must be an integer, got {env!r}") from None
    if bits <= 0:
        raise UsageError("SIXVERTEX_PRECISION_BITS must be positive")
    return bits


def _int_range(text):
    """'4' -> [4]; '1-6' or '1:6' -> [1..6]; '1,3,5' -> [1, 3, 5]."""
    try:
        if "," in text:
            return [int(x) for x in text.split(",")]
        for sep in ("-", ":"):
            if sep in text.strip()[1:]:
                lo, hi = text.split(sep, 1)
                return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or range, got {text!r}") from None


def _fmt(x, bits, fmt):
    if fmt == "plain":
        return mpmath.nstr(x, PLAIN_DIGITS)
    return hankel._full(x, bits)


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _params(args):
    return PhaseParams.of(args.phase, args.gamma, args.t, args.precision_bits)


def _table_out(rows, args, meta):
    if args.format == "json":
        return hankel.to_json(rows, **meta)
    if args.format == "csv":
        return hankel.to_csv(rows)
    keys = list(rows[0]) if rows else []
    return "\n".join(" ".join(str(r[k]) for k in keys) for r in rows)


# ---------------------------------------------------------------- commands

def cmd_enumerate(args):
    if args.dump_asm:
        lines = enumerator.asm_dump_lines(args.size, args.symmetric, args.n_max)
        _emit("\n".join(lines), args.output)
        return 0
    count = enumerator.count_configurations(args.size, args.symmetric, args.n_max)
    if args.count_only or args.format == "plain":
        _emit(str(count), args.output)
        return 0
    hist = enumerator.type_histogram(args.size, args.symmetric, args.n_max)
    rows = [{**counts._asdict(), "multiplicity": m} for counts, m in sorted(hist.items())]
    _emit(_table_out(rows, args, {"size": args.size, "symmetric": args.symmetric, "count": count}),
          args.output)
    return 0


def cmd_partition(args):
    p = _params(args)
    bits = p.precision_bits
    ns = args.n
    if args.route == "enum":
        w = weights_from_params(p)
        vals = {n: enumerator.partition_ht(2 * n, w.w, precision_bits=bits) for n in ns}
    elif args.route == "det":
        vals = {n: hankel.z_ht(p, n) for n in ns}
    else:
        vals = hankel.z_ht_table_via_norms(p, ns)
    if args.format == "plain":
        if len(ns) == 1:
            _emit(_fmt(vals[ns[0]], bits, "plain"), args.output)
        else:
            _emit("\n".join(f"{n} {_fmt(vals[n], bits, 'plain')}" for n in ns), args.output)
        return 0
    rows = [{"n": n, "z": _fmt(vals[n], bits, args.format)} for n in ns]
    if args.route == "det":
        rows = hankel.partition_table(p, ns)
    _emit(_table_out(rows, args, {"params": p.describe(), "route": args.route}), args.output)
    return 0


def cmd_norms(args):
    p = _params(args)
    ns = hankel.norm_sequence(p, args.family.upper(), args.kmax)
    rows = hankel.norm_table(ns)
    if args.format == "plain":
        rows = [{"k": k, "h_k": _fmt(h, p.precision_bits, "plain")} for k, h in enumerate(ns.h)]
    _emit(_table_out(rows, args, {"params": p.describe(), "family": args.family.upper()}),
          args.output)
    return 0


def cmd_theta(args):
    bits = args.precision_bits
    ctx = ThetaContext.for_gamma(parse_real(args.gamma, bits), bits)
    z = parse_real(args.z, bits)
    vals = {"q": ctx.q}
    for j in (1, 2, 3, 4):
        vals[f"theta{j}"] = theta(j, z, ctx)
    vals["theta1_prime0"] = theta1_prime0(ctx)
    if args.format == "plain":
        _emit("\n".join(f"{k} {_fmt(v, bits, 'plain')}" for k, v in vals.items()), args.output)
    else:
        rows = [{"name": k, "value": _fmt(v, bits, args.format)} for k, v in vals.items()]
        _emit(_table_out(rows, args, {"gamma": args.gamma, "z": args.z}), args.output)
    return 0


def cmd_asym(args):
    p = _params(args)
    if args.kmax is not None:
        pred = asy.predict_leading(p)
        fit = None
        if p.phase.value == "D":
            ns = hankel.norm_sequence(p, "HT", args.kmax)
            fit = asy.fit_exponents(ns, "kappa_over_k", G=asy.growth_G(p),
                                    omega=float(asy.d_omega(p)), precision_bits=p.precision_bits)
        else:
            res = {}
            for fam in ("DW", "HT"):
                ns = hankel.norm_sequence(p, fam, args.kmax)
                if p.phase.value == "F":
                    ratios = asy.meixner_ratios(p, ns)
                else:
                    ratios = [h / asy.predict_hk(p, fam, k) for k, h in enumerate(ns.h)]
                res[fam] = [mpmath.nstr(r, 12) for r in ratios]
            fit = asy.FitResult("ratios", {}, [], {"h_over_prediction": res})
        out = json.loads(asy.report_json(p, pred, fit))
        _emit(json.dumps(out, indent=2), args.output)
        return 0
    pred = asy.predict_leading(p, args.n)
    _emit(asy.report_json(p, pred, None), args.output)
    return 0


def cmd_verify(args):
    specs = verify.select(verify.suite_specs(args.suite), args.only)
    if not specs:
        raise UsageError(f"no check matches {args.only!r}")
    reports = verify.run_checks(specs, args.jobs)
    if args.format == "json":
        _emit(verify.reports_json(reports), args.output)
    else:
        lines = [r.line() for r in reports]
        npass = sum(r.passed for r in reports)
        lines.append(f"{npass}/{len(reports)} checks passed")
        _emit("\n".join(lines), args.output)
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------- parser

def build_parser(default_bits=DEFAULT_PRECISION_BITS):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=default_bits,
                        help="working precision in bits (env SIXVERTEX_PRECISION_BITS)")
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--output", help="write to this file instead of stdout")

    phase = argparse.ArgumentParser(add_help=False)
    phase.add_argument("--phase", required=True, help="F, AF or D")
    phase.add_argument("--gamma", required=True, help="decimal or pi token such as pi/3")
    phase.add_argument("--t", required=True, help="decimal or pi token")

    ap = argparse.ArgumentParser(prog="sixvertex", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="enumerate DWBC configurations")
    e.add_argument("--size", type=int, required=True)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--count-only", action="store_true")
    g.add_argument("--dump-asm", action="store_true")
    e.add_argument("--symmetric", action="store_true", help="half-turn symmetric only")
    e.add_argument("--n-max", type=int, default=enumerator.N_MAX)
    e.set_defaults(func=cmd_enumerate)

    pa = sub.add_parser("partition", parents=[common, phase], help="half-turn partition function")
    pa.add_argument("--n", type=_int_range, required=True, help="n, a range a-b, or a list")
    pa.add_argument("--route", choices=("enum", "det", "norms"), default="det")
    pa.set_defaults(func=cmd_partition)

    no = sub.add_parser("norms", parents=[common, phase], help="orthogonal-polynomial norms h_k")
    no.add_argument("--family", choices=("dw", "ht", "DW", "HT"), required=True)
    no.add_argument("--kmax", type=int, required=True)
    no.set_defaults(func=cmd_norms)

    th = sub.add_parser("theta", parents=[common], help="theta functions at nome exp(-pi^2/2g)")
    th.add_argument("--gamma", required=True)
    th.add_argument("--z", required=True)
    th.set_defaults(func=cmd_theta)

    asp = sub.add_parser("asym", parents=[common, phase], help="asymptotic predictions")
    grp = asp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n", type=int)
    grp.add_argument("--kmax", type=int)
    asp.set_defaults(func=cmd_asym)

    ve = sub.add_parser("verify", parents=[common], help="run the verification suite")
    ve.add_argument("--suite", choices=("fast", "full"), default="fast")
    ve.add_argument("--only", help="run checks whose name starts with this")
    ve.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ve.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    try:
        parser = build_parser(_default_bits())
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if getattr(args, "precision_bits", 1) <= 0:
        print("error: --precision-bits must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, ResourceLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SixVertexError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
