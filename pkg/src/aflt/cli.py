"""Command-line front end.

Exit codes: 0 when the criterion holds or does not apply, 1 when it fails,
2 when a bounded search is inconclusive, 64 for usage errors.

scan CSV columns: d, outcome, t, threshold, certificate_kind
density CSV columns: d, r, v, complete   (the set C')
mersenne CSV columns: m, M_m_digits, omega, fully_factored, bound
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import io
import json
import sys
from fractions import Fraction

from . import arith
from .criterion import Outcome, SearchBounds, check_criterion, default_jobs, scan
from .density import bound_approx2, density_report, enumerate_cprime, mersenne_stats
from .errors import AfltError
from .frey import frey_invariants, valuation_identity_U
from .quad_field import Element, Splitting, make_field, parse_element, primes_above_2
from .sunit import brute_force, param_split2, param_with_q

EX_USAGE = 64
EXIT_CODES = {
    Outcome.HOLDS_UNCONDITIONAL: 0,
    Outcome.HOLDS_BOUNDED: 0,
    Outcome.NOT_APPLICABLE: 0,
    Outcome.FAILS: 1,
    Outcome.INCONCLUSIVE: 2,
}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


# -- output -----------------------------------------------------------------

def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj if -2**63 <= obj < 2**63 else str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (Fraction, Element)):
        return _plain(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return jsonable(obj.to_dict() if hasattr(obj, "to_dict") else dataclasses.asdict(obj))
    raise TypeError(type(obj))


def _plain(v) -> str:
    if isinstance(v, Element) and v.is_rational():
        v = v.to_fraction()
    return str(v)


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _csv(header, rows) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return out.getvalue()


def emit(args, report: dict, csv_text: str | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        text = json.dumps(jsonable(report), indent=2) + "\n"
    elif fmt == "text":
        text = "\n".join(_text(jsonable(report))) + "\n"
    else:
        if csv_text is None:
            raise UsageError(f"--format csv is not available for {args.command}")
        text = csv_text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- helpers ----------------------------------------------------------------

def _positive(flag):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects an integer, got {s!r}")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{flag} must be positive, got {v}")
        return v
    return conv


def _odd_radical(values) -> int:
    rad = 1
    for v in values:
        if v == 0:
            raise UsageError("coefficients must be nonzero")
        for p in arith.prime_factors(abs(v)) if abs(v) > 1 else []:
            if p == 2:
                raise UsageError("coefficients A, B, C must be odd")
            if rad % p:
                rad *= p
    return rad


def _bounds(args) -> SearchBounds:
    return SearchBounds(r_max=args.rmax, s_max=args.smax, v_max=args.vmax, coord_bound=args.coord)


def _radical(args) -> int:
    given = [x for x in (args.q, args.radical) if x is not None]
    coeffs = [x for x in (args.A, args.B, args.C) if x is not None]
    if len(given) + bool(coeffs) > 1:
        raise UsageError("give at most one of --q, --radical, --A/--B/--C")
    if args.q is not None:
        if not arith.is_prime(args.q) or args.q == 2:
            raise UsageError(f"--q {args.q} is not an odd prime")
        return args.q
    if args.radical is not None:
        if args.radical % 2 == 0:
            raise UsageError("--radical must be odd")
        return args.radical
    return _odd_radical(coeffs)


# -- commands ---------------------------------------------------------------

def cmd_check(args) -> int:
    v = check_criterion(args.d, _radical(args), _bounds(args))
    emit(args, v.to_dict(), _csv(["d", "outcome", "t", "threshold", "certificate_kind"],
                                 [[v.d, v.outcome.value, "" if v.t_value is None else v.t_value,
                                   "" if v.threshold is None else v.threshold,
                                   v.certificate.kind if v.certificate else ""]]))
    return EXIT_CODES[v.outcome]


def cmd_sunit(args) -> int:
    field = make_field(args.d)
    odd = [args.q] if args.q else []
    report = {"d": args.d, "q": args.q, "mode": args.mode, "r_max": args.rmax}
    param = brute = None
    if args.mode in ("param", "both"):
        if field.two_splitting is Splitting.SPLIT and not odd:
            param = param_split2(args.d, args.rmax)
        elif field.two_splitting is Splitting.RAMIFIED and odd:
            param = param_with_q(args.d, args.q, args.rmax, args.smax, args.vmax)
        else:
            raise UsageError("no parametrization for this (d, q); use --mode brute")
        report["param"] = [s.to_dict() for s in param]
    if args.mode in ("brute", "both"):
        brute = brute_force(field, odd, args.coord, 1, 1 if odd else 0).relevant()
        report["brute_force"] = [s.to_dict() for s in brute]
        report["coord_bound"] = args.coord
    if param is not None and brute is not None:
        p_ids, b_ids = param.orbit_ids(), brute.orbit_ids()
        report["agree"] = p_ids == b_ids
        report["only_param"] = sorted(list(k) for k in p_ids - b_ids)
        report["only_brute"] = sorted(list(k) for k in b_ids - p_ids)
    rows = []
    for source, sols in (("param", param), ("brute", brute)):
        for s in sols or []:
            p = s.params
            rows.append([source, _plain(s.lam), _plain(s.mu), p.r1 if p else "", p.r2 if p else "",
                         p.s1 if p else "", p.s2 if p else "", p.v if p else ""])
    emit(args, report, _csv(["source", "lambda", "mu", "r1", "r2", "s1", "s2", "v"], rows))
    return 0


def cmd_frey(args) -> int:
    field = make_field(args.d)
    try:
        vals = [parse_element(s, field) for s in (args.A, args.B, args.C, args.a, args.b, args.c)]
    except ValueError as e:
        raise UsageError(str(e))
    fd = frey_invariants(*vals, args.p, field=field, require_odd=False)
    report = fd.to_dict()
    report.update({k: _plain(getattr(fd, k)) for k in ("A", "B", "C", "a", "b", "c", "c4", "delta", "j")})
    report["odd_coefficients"] = all(
        (x.norm().numerator % 2) and x.is_integral() for x in (fd.A, fd.B, fd.C))
    checks = []
    if report["odd_coefficients"]:
        for P in primes_above_2(field):
            if not P.in_U:
                continue
            try:
                checks.append(dataclasses.asdict(valuation_identity_U(fd, P)))
            except AfltError as e:
                checks.append({"prime": str(P), "skipped": str(e)})
    report["U_checks"] = checks
    emit(args, report, _csv(["c4", "delta", "j"], [[report["c4"], report["delta"], report["j"]]]))
    return 0


def cmd_density(args) -> int:
    rep = density_report(args.x, args.rmax, args.budget)
    cp = enumerate_cprime(args.x, args.rmax, args.budget)
    emit(args, rep.to_dict(), cp.to_csv())
    return 0


def cmd_mersenne(args) -> int:
    stats = mersenne_stats(args.mmax, args.budget)
    rows, items = [], []
    for st in stats:
        b = bound_approx2(st.m, args.budget)
        rows.append([st.m, len(str(st.M)), st.omega, int(st.fully_factored), f"{b.value:.6g}"])
        items.append({"m": st.m, "M_m": st.M, "omega": st.omega,
                      "fully_factored": st.fully_factored,
                      "factors": [[p, e] for p, e in st.factors],
                      "bound": b.value, "bound_squared": b.square})
    emit(args, {"m_max": args.mmax, "stats": items},
         _csv(["m", "M_m_digits", "omega", "fully_factored", "bound"], rows))
    return 0


def cmd_scan(args) -> int:
    if args.dmax < args.dmin:
        raise UsageError("--dmax must be at least --dmin")
    radical = _radical(args)
    rows = scan(range(args.dmin, args.dmax + 1), radical, _bounds(args), args.jobs or default_jobs())
    table = [r.to_row() for r in rows]
    emit(args, {"radical": radical, "rows": table},
         _csv(["d", "outcome", "t", "threshold", "certificate_kind"],
              [[r[k] for k in ("d", "outcome", "t", "threshold", "certificate_kind")] for r in table]))
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> Parser:
    parser = Parser(prog="aflt", description=__doc__,
                    formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        p.add_argument("--output", help="write to this file instead of stdout")

    def bounds(p):
        p.add_argument("--rmax", type=_positive("--rmax"), default=64)
        p.add_argument("--smax", type=_positive("--smax"), default=16)
        p.add_argument("--vmax", type=_positive("--vmax"), default=10**6)
        p.add_argument("--coord", type=_positive("--coord"), default=1000,
                       help="brute-force coordinate bound")

    def coefficients(p):
        p.add_argument("--q", type=_positive("--q"), help="odd prime; S = primes above 2q")
        p.add_argument("--radical", type=_positive("--radical"), help="odd radical of ABC")
        for name in "ABC":
            p.add_argument(f"--{name}", type=int, help="rational integer coefficient")

    p = sub.add_parser("check", help="decide the criterion for one field")
    p.add_argument("--d", type=_positive("--d"), required=True)
    coefficients(p)
    bounds(p)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sunit", help="list S-unit solutions")
    p.add_argument("--d", type=_positive("--d"), required=True)
    p.add_argument("--q", type=_positive("--q"))
    p.add_argument("--mode", choices=("param", "brute", "both"), default="param")
    bounds(p)
    p.set_defaults(coord=64)
    common(p)
    p.set_defaults(func=cmd_sunit)

    p = sub.add_parser("frey", help="Frey curve invariants of a solution")
    p.add_argument("--d", type=_positive("--d"), default=1,
                   help="field Q(sqrt(-d)); irrelevant for rational inputs")
    for name in ("A", "B", "C", "a", "b", "c"):
        p.add_argument(f"--{name}", required=True, help="integer or (x+y*sqrt(-d))/den")
    p.add_argument("--p", type=_positive("--p"), required=True)
    common(p)
    p.set_defaults(func=cmd_frey)

    p = sub.add_parser("density", help="squarefree counts and the set C'")
    p.add_argument("--x", type=_positive("--x"), default=10**6)
    p.add_argument("--rmax", type=_positive("--rmax"), default=64)
    p.add_argument("--budget", type=_positive("--budget"), default=arith.DEFAULT_BUDGET)
    common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("mersenne", help="omega(2^m - 1) and the density bound")
    p.add_argument("--mmax", type=_positive("--mmax"), default=40)
    p.add_argument("--budget", type=_positive("--budget"), default=arith.DEFAULT_BUDGET)
    common(p)
    p.set_defaults(func=cmd_mersenne)

    p = sub.add_parser("scan", help="verdicts for a range of d (CSV by default)")
    p.add_argument("--dmin", type=_positive("--dmin"), default=2)
    p.add_argument("--dmax", type=_positive("--dmax"), required=True)
    p.add_argument("--jobs", type=_positive("--jobs"), help="worker processes (default $AFLT_JOBS or CPU count)")
    coefficients(p)
    bounds(p)
    common(p, fmt="csv")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"aflt {args.command}: error: {e}", file=sys.stderr)
        return EX_USAGE
    except AfltError as e:
        print(f"aflt {args.command}: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
