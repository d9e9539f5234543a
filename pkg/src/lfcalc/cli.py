"""Command-line front end: ``lfc integrate | diff | check | suite | sweep``.

JSON goes to standard output, diagnostics to standard error.  Exit codes:
0 when everything holds, 1 when a violation is found, 2 on input errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from .calculus import GridFn, lf_derivative_est, lf_integral
from .errors import LfcError
from .expr import compile_expr
from .harness import ALL_FAMILIES, SuiteConfig, run_suite
from .inequalities import ExponentSpec, Family, Verdict, check, validate_regime
from .partition import Alpha, make_partition, parse_descriptor

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
CSV_HEADER = ["param", "lhs", "rhs", "slack", "rel_slack", "verdict"]


class InputError(LfcError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def parse_alpha(text):
    """``0.5`` for an explicit order, ``n,k`` for ``ln k / ln n``."""
    text = text.strip()
    try:
        if "," in text:
            n, k = (int(v) for v in text.split(","))
            return Alpha.from_ifs(n, k)
        return Alpha.explicit(float(text))
    except ValueError as exc:
        raise InputError(f"bad --alpha {text!r}: {exc}") from None


def parse_interval(text):
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad --interval {text!r}: expected a,b") from None
    return a, b


def _partition(args, alpha, descriptor=None):
    """Cantor partitions force their own alpha; the others default to alpha = 1."""
    a, b = parse_interval(args.interval)
    descriptor = descriptor or args.partition
    if alpha is None and parse_descriptor(descriptor)[0] != "cantor":
        alpha = Alpha.explicit(1.0)
    return make_partition(descriptor, a, b, alpha, seed=args.seed)


def _dump(obj, stream=None):
    stream = sys.stdout if stream is None else stream
    stream.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# -- integrate / diff ----------------------------------------------------------

def cmd_integrate(args):
    alpha = parse_alpha(args.alpha) if args.alpha else None
    P = _partition(args, alpha)
    f = GridFn.sample(P, compile_expr(args.expr, P.alpha.value))
    _dump({"value": lf_integral(f), "alpha": P.alpha.value,
           "total_weight": P.total_weight, "N": P.size})
    return EXIT_OK


def cmd_diff(args):
    alpha = parse_alpha(args.alpha)
    f = compile_expr(args.expr, alpha.value)
    est, qs = lf_derivative_est(f, args.at, alpha, args.h0, args.ratio, args.steps)
    _dump({"estimate": est, "quotients": qs,
           "h": [args.h0 * args.ratio ** i for i in range(args.steps)],
           "alpha": alpha.value, "at": args.at})
    return EXIT_OK


# -- check / sweep ------------------------------------------------------------

def _pj_list(values):
    out = []
    try:
        for v in values or ():
            out.extend(float(s) for s in v.split(",") if s.strip())
    except ValueError:
        raise InputError(f"bad --pj {values!r}") from None
    return out


def build_exponents(family, args, p=None):
    # a swept p takes its own conjugate
    q = args.q if p is None else None
    p = args.p if p is None else p
    pj = _pj_list(args.pj)
    if family in (Family.HOLDER, Family.REVERSE_HOLDER):
        if p is None:
            raise InputError(f"{family.cli_name} needs --p")
        return ExponentSpec.pair(p, q)
    if family in (Family.MINKOWSKI, Family.REVERSE_MINKOWSKI,
                  Family.MINKOWSKI_MULTI, Family.POWER_SUM):
        if p is None:
            raise InputError(f"{family.cli_name} needs --p")
        return ExponentSpec.scalar(p)
    if family in (Family.RADON_RATIO, Family.RADON_RATIO_MULTI):
        if p is None or args.r is None:
            raise InputError(f"{family.cli_name} needs --p and --r")
        return ExponentSpec.ratio(p, args.r)
    if not pj:
        raise InputError(f"{family.cli_name} needs --pj")
    return ExponentSpec.multi(pj)


def _sources(family, args):
    if family.is_pair:
        if args.f is None or args.g is None:
            raise InputError(f"{family.cli_name} needs --f and --g")
        return [args.f, args.g]
    if not args.fj or len(args.fj) < 2:
        raise InputError(f"{family.cli_name} needs at least two --fj")
    if family in (Family.HOLDER_MULTI, Family.REVERSE_HOLDER_MULTI):
        n = len(_pj_list(args.pj))
        if n != len(args.fj):
            raise InputError(f"{len(args.fj)} --fj given but {n} exponents in --pj")
    return list(args.fj)


def _evaluate(family, sources, exps, P, seed=None):
    fs = [GridFn.sample(P, compile_expr(src, P.alpha.value)) for src in sources]
    return check(family, fs, exps, seed=seed)


def _exit_for(verdicts):
    return EXIT_VIOLATION if Verdict.VIOLATED in verdicts else EXIT_OK


def cmd_check(args):
    family = Family.parse(args.family)
    sources = _sources(family, args)
    exps = build_exponents(family, args)
    validate_regime(family, exps)
    alpha = parse_alpha(args.alpha) if args.alpha else None
    P = _partition(args, alpha)
    report = _evaluate(family, sources, exps, P, seed=args.seed)
    _dump(report.to_json())
    return _exit_for([report.verdict])


def parse_range(text):
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise InputError(f"bad --range {text!r}: expected lo:hi:steps") from None
    if steps < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise InputError(f"bad --range {text!r}")
    return np.linspace(lo, hi, steps).tolist()


def _sweep_rows(family, args):
    """Resolve every row's (param, exponents, partition) before computing any of them."""
    rows = []
    if args.param == "p":
        if family in (Family.HOLDER_MULTI, Family.REVERSE_HOLDER_MULTI):
            raise InputError(f"--param p does not apply to {family.cli_name} (uses --pj)")
        alpha = parse_alpha(args.alpha) if args.alpha else None
        exps_list = [(p, build_exponents(family, args, p=p)) for p in parse_range(args.range)]
        for _, exps in exps_list:
            validate_regime(family, exps)
        P = _partition(args, alpha)
        rows = [(p, exps, P) for p, exps in exps_list]
    elif args.param == "alpha":
        exps = build_exponents(family, args)
        validate_regime(family, exps)
        if ":" in args.range:
            alphas = [Alpha.explicit(v) for v in parse_range(args.range)]
        else:
            alphas = [parse_alpha(s) for s in args.range.split(";") if s.strip()]
        kind, params = parse_descriptor(args.partition)
        for al in alphas:
            desc = args.partition
            if kind == "cantor":
                if al.ifs is None:
                    raise InputError("a cantor partition needs alpha given as n,k pairs")
                desc = f"cantor:{al.ifs[0]},{al.ifs[1]},{params[2]}"
            rows.append((al.value, exps, _partition(args, None if kind == "cantor" else al, desc)))
    elif args.param == "level":
        kind, params = parse_descriptor(args.partition)
        if kind != "cantor":
            raise InputError("--param level needs a cantor partition")
        exps = build_exponents(family, args)
        validate_regime(family, exps)
        levels = sorted({int(round(v)) for v in parse_range(args.range)})
        if levels[0] < 1:
            raise InputError("cantor levels must be positive")
        for m in levels:
            desc = f"cantor:{params[0]},{params[1]},{m}"
            rows.append((m, exps, _partition(args, None, desc)))
    rows.sort(key=lambda r: r[0])
    return rows


def cmd_sweep(args):
    family = Family.parse(args.family)
    sources = _sources(family, args)
    rows = _sweep_rows(family, args)
    out_rows = []
    for param, exps, P in rows:
        rep = _evaluate(family, sources, exps, P, seed=args.seed)
        out_rows.append((param, rep))
    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for param, rep in out_rows:
            writer.writerow([repr(param), repr(rep.lhs), repr(rep.rhs), repr(rep.slack),
                             repr(rep.rel_slack), rep.verdict.value])
    finally:
        if args.out:
            stream.close()
    return _exit_for([rep.verdict for _, rep in out_rows])


# -- suite ---------------------------------------------------------------------

def cmd_suite(args):
    families = ALL_FAMILIES
    if args.families:
        families = tuple(Family.parse(s.strip()) for s in args.families.split(",") if s.strip())
    cfg = SuiteConfig(seed=args.seed, cases=args.cases, families=families)
    report = run_suite(cfg)
    if args.out:
        out = Path(args.out)
        with open(out, "w") as fh:
            _dump(report.to_json(), fh)
        for ctx in report.violations:
            replay = out.with_name(f"{out.stem}.replay-{ctx['case_index']}.json")
            with open(replay, "w") as fh:
                _dump(ctx, fh)
    else:
        _dump(report.to_json())
    print(f"{cfg.cases} cases, {report.violated} violated, min rel_slack "
          f"{report.min_rel_slack:.3e}, {report.elapsed:.2f} s", file=sys.stderr)
    return EXIT_VIOLATION if report.violations else EXIT_OK


# -- wiring ------------------------------------------------------------------------

def _add_check_flags(sp):
    sp.add_argument("--family", required=True,
                    help="one of: " + ", ".join(f.cli_name for f in Family))
    sp.add_argument("--f", help="first function (pair families)")
    sp.add_argument("--g", help="second function (pair families)")
    sp.add_argument("--fj", action="append", help="one function of a multi family (repeat)")
    sp.add_argument("--p", type=float)
    sp.add_argument("--q", type=float, help="conjugate of p; derived when omitted")
    sp.add_argument("--pj", action="append", help="exponent tuple, comma separated or repeated")
    sp.add_argument("--r", type=float, help="lower exponent of the ratio families")
    sp.add_argument("--alpha", help="real in (0,1] or an IFS pair n,k (default 1; cantor forces its own)")
    sp.add_argument("--partition", default="uniform:64")
    sp.add_argument("--interval", default="0,1")
    sp.add_argument("--seed", type=int, default=0, help="seed for random:<N> partitions")


def build_parser():
    parser = _Parser(prog="lfc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("integrate", help="local fractional integral of an expression")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--alpha")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--interval", default="0,1")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("diff", help="difference quotients of the local fractional derivative")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--at", type=float, required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--h0", type=float, default=1e-2)
    sp.add_argument("--ratio", type=float, default=0.5)
    sp.add_argument("--steps", type=int, default=20)
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("check", help="evaluate one inequality")
    _add_check_flags(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("suite", help="randomized inequality suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=10_000)
    sp.add_argument("--families", help="comma separated; default all")
    sp.add_argument("--out", help="report path; standard output when omitted")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("sweep", help="one inequality across a parameter range, as CSV")
    _add_check_flags(sp)
    sp.add_argument("--param", required=True, choices=("p", "alpha", "level"))
    sp.add_argument("--range", required=True,
                    help="lo:hi:steps, or for alpha a ';'-separated list such as 3,2;4,2;5,3")
    sp.add_argument("--out", help="CSV path; standard output when omitted")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LfcError as exc:
        print(f"lfc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"lfc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
