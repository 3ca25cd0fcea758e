"""Command line front end.

    nafnet solve NETWORK
    nafnet transform NETWORK KIND VERTEX... [--name D] [--verify]
    nafnet reduce NETWORK [--verify]
    nafnet ladder (--alpha A --beta B | --preset lc|cl [--L L] [--C C]) [--range 1..N | --n N]
    nafnet convergence (same spec options) [--range 1..N]

Exit codes: 0 success, 2 parse/usage error, 3 network validation error,
4 transform precondition error, 5 field or precision error,
6 ``--verify`` mismatch, 1 internal error.
"""

import argparse
import csv
import io
import re
import sys

from . import __version__
from .errors import (
    InternalError,
    NetworkError,
    NotInFieldError,
    ParseError,
    PrecisionError,
    TransformError,
)
from .fields import FIELDS, LEVI_CIVITA, RATIONAL, truncation
from .fileformat import coerce_network, dump_network, load_network, parse_fraction_arg
from .ladder import (
    INCONCLUSIVE,
    LadderSpec,
    cauchy_analysis,
    cl_preset,
    exhaustion_sequence,
    lc_preset,
    residual_series,
)
from .network import admittance_identities, effective_admittance, solve_dirichlet
from .transforms import TRANSFORMS, reduce_network

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_PRECONDITION = 4
EXIT_FIELD = 5
EXIT_VERIFY = 6

CSV_VERSION = "nafnet-ladder-csv v1"
CSV_HEADER = ("n", "peff", "diff", "valuation", "verdict")


class VerifyError(Exception):
    pass


def _table(headers, rows):
    cols = list(zip(headers, *rows)) if rows else [(h,) for h in headers]
    widths = [max(len(str(c)) for c in col) for col in cols]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    net = load_network(args.network)
    if args.field:
        try:
            net = coerce_network(net, FIELDS[args.field])
        except TypeError as exc:
            raise NetworkError(f"cannot move {net.field.name} admittances into {args.field}: {exc}") from None
    return net


def cmd_solve(args):
    net = _load(args)
    fmt = net.field.format
    v = solve_dirichlet(net)
    ids = admittance_identities(net, v)
    peff = ids.peff
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("vertex", "potential"))
        for x in net.vertices:
            w.writerow((x, fmt(v[x])))
        w.writerow(("P_eff", fmt(peff)))
        w.writerow(("Z_eff", fmt(1 / peff)))
        _emit(args, buf.getvalue())
        return EXIT_OK
    out = [f"field: {net.field.name}", ""]
    out.append(_table(("vertex", "role", "v"), [(x, _role(net, x), fmt(v[x])) for x in net.vertices]))
    out.append(f"P_eff = {fmt(peff)}")
    out.append(f"Z_eff = {fmt(1 / peff)}")
    out.append("")
    out.append("admittance identities:")
    out.append(f"  sum over source edges (1 - v) rho      = {fmt(ids.peff)}")
    out.append(f"  sum over boundary edges v rho          = {fmt(ids.boundary_current)}")
    out.append(f"  sum of Laplacians on the boundary      = {fmt(ids.boundary_laplacian)}")
    out.append(f"  minus Laplacian at the source          = {fmt(ids.source_laplacian)}")
    out.append(f"  energy 1/2 sum (grad v)^2 rho          = {fmt(ids.energy)}")
    out.append(f"  all equal: {'yes' if ids.all_equal else 'NO'}")
    _emit(args, "\n".join(out) + "\n")
    return EXIT_OK if ids.all_equal else EXIT_INTERNAL


def _role(net, x):
    if x == net.source:
        return "source"
    return "boundary" if x in net.boundary else "interior"


def _verify(before, after):
    p0, p1 = effective_admittance(before), effective_admittance(after)
    if not before.field.agree(p0, p1):
        raise VerifyError(f"P_eff changed: {before.field.format(p0)} -> {after.field.format(p1)}")
    v0, v1 = solve_dirichlet(before), solve_dirichlet(after)
    for x in after.vertices:
        if x in v0 and not before.field.agree(v0[x], v1[x]):
            raise VerifyError(f"potential at {x!r} changed")


def cmd_transform(args):
    net = _load(args)
    fn = TRANSFORMS[args.kind]
    if args.kind == "delta_y":
        if len(args.vertices) != 3 or not args.name:
            raise TransformError("delta_y needs three triangle vertices and --name for the new vertex")
        out = fn(net, *args.vertices, args.name)
    else:
        if len(args.vertices) != 1:
            raise TransformError(f"{args.kind} takes exactly one vertex")
        out = fn(net, args.vertices[0])
    if args.verify:
        _verify(net, out)
    _emit(args, dump_network(out))
    return EXIT_OK


def cmd_reduce(args):
    net = _load(args)
    out = reduce_network(net)
    if args.verify:
        _verify(net, out)
    _emit(args, dump_network(out))
    return EXIT_OK


def _parse_range(args):
    if args.n is not None:
        if args.n < 1:
            raise ParseError("--n must be at least 1")
        return args.n, args.n
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", args.range)
    if not m:
        raise ParseError(f"--range must look like 1..N, got {args.range!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 1 or hi < lo:
        raise ParseError(f"bad range {args.range!r}")
    return lo, hi


def _ladder_spec(args):
    if args.preset:
        fld = FIELDS[args.field] if args.field else LEVI_CIVITA
        if fld is RATIONAL:
            raise NotInFieldError("the lc/cl presets need the rational_function or levi_civita field")
        L, C = parse_fraction_arg(args.L), parse_fraction_arg(args.C)
        return (lc_preset if args.preset == "lc" else cl_preset)(L, C, fld)
    if args.alpha is None or args.beta is None:
        raise ParseError("give --alpha and --beta, or --preset")
    fld = FIELDS[args.field] if args.field else RATIONAL
    alpha, beta = fld.parse(args.alpha), fld.parse(args.beta)
    try:
        return LadderSpec(alpha, beta, fld)
    except ValueError as exc:
        raise NetworkError(str(exc)) from None


def _fmt_val(v):
    if v is None:
        return "?"
    return "inf" if v == float("inf") else str(v)


def _run_ladder(args):
    spec = _ladder_spec(args)
    lo, hi = _parse_range(args)
    window = args.window
    report = exhaustion_sequence(spec, hi, window=window)
    verdict = report.verdict if hi >= 3 else INCONCLUSIVE
    return spec, lo, hi, report, verdict


def cmd_ladder(args):
    spec, lo, hi, report, verdict = _run_ladder(args)
    fmt = spec.field.format
    rows = []
    for n in range(lo, hi + 1):
        p = report.admittances[n - 1]
        if n == 1:
            diff, val = "", ""
        else:
            diff = fmt(report.differences[n - 2])
            val = _fmt_val(report.difference_valuations[n - 2]) if spec.field is not RATIONAL else ""
        rows.append([str(n), fmt(p), diff, val])
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(f"# {CSV_VERSION}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow(row + [verdict])
        _emit(args, buf.getvalue())
        return EXIT_OK
    headers = ["n", "P_eff", "diff", "valuation"]
    limit = report.limit_candidate
    if limit is not None and spec.field is not RATIONAL:
        headers.append("residual valuation")
        with truncation(window=report.window):
            for row, n in zip(rows, range(lo, hi + 1)):
                row.append(_fmt_val(spec.field.valuation(residual_series(spec, n))))
    out = [f"field: {spec.field.name}", f"alpha = {fmt(spec.alpha)}", f"beta = {fmt(spec.beta)}"]
    if spec.field is LEVI_CIVITA:
        out.append(f"window = {report.window}")
    out.append("")
    out.append(_table(headers, rows))
    out.append(f"monotone: {'yes' if report.monotone else 'no'}")
    out.append(f"verdict: {verdict}")
    if limit is not None:
        out.append(f"limit candidate: {fmt(limit)}")
    _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def cmd_convergence(args):
    spec, lo, hi, report, _ = _run_ladder(args)
    if hi < 3:
        raise ParseError("convergence analysis needs a range reaching at least n = 3")
    verdict = cauchy_analysis(report, window=args.terms)
    vals = ", ".join(_fmt_val(v) for v in report.difference_valuations)
    out = [f"difference valuations: {vals}"]
    if report.limit_candidate is not None and spec.field is not RATIONAL:
        with truncation(window=report.window):
            res = [_fmt_val(spec.field.valuation(residual_series(spec, n))) for n in range(lo, hi + 1)]
        out.append(f"residual valuations: {', '.join(res)}")
        out.append(f"limit candidate: {spec.field.format(report.limit_candidate)}")
    out.append(f"verdict: {verdict}")
    _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def _window(text):
    try:
        w = parse_fraction_arg(text)
    except ParseError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if w <= 0:
        raise argparse.ArgumentTypeError("window must be positive")
    return w


def build_parser():
    parser = argparse.ArgumentParser(prog="nafnet", description="Exact effective admittance of networks over ordered fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=sorted(FIELDS), help="working field (overrides the document's)")
    common.add_argument("--window", type=_window, help="Levi-Civita truncation window in exponent units")
    common.add_argument("--out", help="write output to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve the Dirichlet problem and report P_eff")
    p.add_argument("network")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("transform", parents=[common], help="apply one admittance-preserving transform")
    p.add_argument("network")
    p.add_argument("kind", choices=sorted(TRANSFORMS))
    p.add_argument("vertices", nargs="+")
    p.add_argument("--name", help="name of the vertex created by delta_y")
    p.add_argument("--verify", action="store_true", help="re-solve and check P_eff and potentials")
    p.add_argument("--format", choices=("file",), default="file")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("reduce", parents=[common], help="star-mesh every interior vertex")
    p.add_argument("network")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--format", choices=("file",), default="file")
    p.set_defaults(func=cmd_reduce)

    for name, func, helptext in (
        ("ladder", cmd_ladder, "effective admittances of finite ladders"),
        ("convergence", cmd_convergence, "order-topology convergence evidence for a ladder"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--alpha", help="series admittance in the field's text syntax")
        p.add_argument("--beta", help="shunt admittance in the field's text syntax")
        p.add_argument("--preset", choices=("lc", "cl"))
        p.add_argument("--L", default="1", help="inductance for presets")
        p.add_argument("--C", default="1", help="capacitance for presets")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--range", default="1..4", help="ladder lengths, e.g. 1..10")
        group.add_argument("--n", type=int, help="a single ladder length")
        if name == "ladder":
            p.add_argument("--format", choices=("table", "csv"), default="table")
        else:
            p.add_argument("--terms", type=int, help="judge only the last TERMS differences")
        p.set_defaults(func=func)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.window is not None and args.func not in (cmd_ladder, cmd_convergence):
            with truncation(window=args.window):
                return args.func(args)
        return args.func(args)
    except ParseError as exc:
        print(f"nafnet: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NetworkError as exc:
        print(f"nafnet: invalid network: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TransformError as exc:
        print(f"nafnet: transform not applicable: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (NotInFieldError, PrecisionError, ZeroDivisionError) as exc:
        print(f"nafnet: field error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except VerifyError as exc:
        print(f"nafnet: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except InternalError as exc:
        print(f"nafnet: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"nafnet: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
