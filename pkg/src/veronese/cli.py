"""Command-line front end.

One verdict line goes to stdout, details go to stderr, and ``--json`` writes a
machine-readable report.  Exit codes: 0 success or affirmative answer, 1
certified negative answer, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import DomainError
from .germ import (
    Germ,
    check_family_pattern,
    default_trunc,
    disguise,
    family_pattern,
    is_q_regular,
    line_curve,
    make_family_germ,
    osculating_dimensions,
    project_drop,
    random_directions,
    veronese,
)
from .jets import MJet, ambient_dimension
from .polyparse import parse_jet, parse_poly, poly_degree
from .reduction import (
    NOT_PROPERTY_P,
    VERONESE,
    decide_veronese,
    run_pipeline,
)
from .rnc import fit_rnc
from .serialize import (
    format_germ,
    frac_str,
    jet_json,
    parse_germ,
    read_json,
    trace_json,
    verify_trace,
    write_json,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _alpha(text: str) -> tuple:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"multi-index {text!r} must look like 1,1") from None
    if any(x < 0 for x in out):
        raise UsageError(f"multi-index {text!r} has a negative entry")
    return out


def _add_globals(p, suppress: bool):
    default = argparse.SUPPRESS
    p.add_argument("--seed", type=int, default=default if suppress else 0, help="seed for generators and sampled directions")
    p.add_argument("--trunc", type=int, default=default if suppress else None, help="truncation order T")
    p.add_argument("--samples", type=int, default=default if suppress else 10, help="number of sampled directions")
    p.add_argument("--json", dest="json_out", default=default if suppress else None, help="write a machine-readable report here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="veronese", description="Exact recognition of Veronese germs.")
    _add_globals(parser, suppress=False)
    common = _Parser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    gen = sub.add_parser("generate", parents=[common], help="write a germ file")
    gen.add_argument("kind", choices=["veronese", "disguise", "family", "project", "perturb"])
    gen.add_argument("--n", type=int, default=2)
    gen.add_argument("--q", type=int, default=2)
    gen.add_argument("--magnitude", type=int, default=2, help="size of random disguise coefficients")
    gen.add_argument("--disguise", action="store_true", help="hide family/perturb output behind a seeded disguise")
    gen.add_argument("--alpha", default="1,1", help="coordinate dropped by 'project'")
    gen.add_argument("--add", action="append", default=[], metavar="ALPHA=POLY",
                     help="'perturb': add POLY to x_ALPHA (repeatable)")
    gen.add_argument("-o", "--out", help="output path (default stdout)")
    for k in range(2, 10):
        gen.add_argument(f"--R{k}", dest=f"R{k}", metavar="POLY", help=f"'family': the weight-{k} factor R_{k}")

    chk = sub.add_parser("check", parents=[common], help="check a property of a germ file")
    chk.add_argument("file")
    chk.add_argument("what", choices=["regularity", "osculating", "pattern", "rnc-lines", "trace"])
    chk.add_argument("--trace", dest="trace_path", help="trace file to replay ('trace')")

    red = sub.add_parser("reduce", parents=[common], help="run the order-by-order reduction")
    red.add_argument("file")
    red.add_argument("--trace", dest="trace_path", help="write the trace file here")

    dec = sub.add_parser("decide", parents=[common], help="decide whether the germ is Veronese")
    dec.add_argument("file")
    dec.add_argument("--trace", dest="trace_path", help="write the trace file here")
    return parser


# ---------------------------------------------------------------------------
# generate


def _perturb_default(n: int, q: int) -> list:
    if (n, q) != (2, 2):
        raise UsageError("perturb needs --add unless n = q = 2")
    return ["2,0=s2^3", "1,1=s2^3"]


def cmd_generate(args) -> int:
    n, q, seed = args.n, args.q, args.seed
    if n < 1 or q < 1:
        raise DomainError("--n and --q must be positive")
    T = args.trunc if args.trunc is not None else default_trunc(q)
    if args.kind == "family":
        R_text = {k: getattr(args, f"R{k}") for k in range(2, 10) if getattr(args, f"R{k}")}
        bad = [k for k in R_text if k > q]
        if bad:
            raise DomainError(f"--R{bad[0]} is out of range: weights run over 2..q={q}")
        if args.trunc is None:
            degs = [k + poly_degree(parse_poly(t, n)) for k, t in R_text.items()]
            T = max([T] + degs)
        R = {k: parse_jet(t, n, T - k) for k, t in R_text.items()}
    if T < q + 3:
        raise DomainError(f"--trunc {T} is below q+3 = {q + 3}")
    base = veronese(n, q, T)
    out_q = q
    if args.kind == "veronese":
        g = base
    elif args.kind == "disguise":
        g = disguise(base, seed, args.magnitude)[0]
    elif args.kind == "family":
        g = make_family_germ(n, q, T, R)
    elif args.kind == "project":
        alpha = _alpha(args.alpha)
        if alpha not in base.alphas:
            raise DomainError(f"--alpha {args.alpha} is not a coordinate index of weight 1..{q}")
        g = project_drop(base, alpha)
    else:
        comps = dict(base.items())
        for spec in args.add or _perturb_default(n, q):
            if "=" not in spec:
                raise UsageError(f"--add {spec!r} must look like ALPHA=POLY")
            a_text, poly = spec.split("=", 1)
            alpha = _alpha(a_text)
            if alpha not in comps:
                raise DomainError(f"--add: {a_text} is not a coordinate index")
            comps[alpha] = comps[alpha] + parse_jet(poly, n, T)
        g = Germ(n, q, T, comps)
    if args.disguise and args.kind in ("family", "perturb"):
        g = disguise(g, seed, args.magnitude)[0]
    text = format_germ(g, out_q)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.kind} germ (n={n}, q={q}, T={T}) to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_germ(text)


def _normal_form(g, q: int):
    """The germ itself when already in the final form, else the reduction's output."""
    if isinstance(g, Germ):
        try:
            family_pattern(g)
            return g, None
        except DomainError:
            pass
    trace = run_pipeline(g, q)
    if trace.verdict != "reduced":
        return None, trace
    return trace.final, trace


def _sigma_str(sigma) -> str:
    return "(" + ",".join(str(x) for x in sigma) + ")"


def cmd_check(args, report: dict) -> int:
    g, q = _load(args.file)
    report.update(file=args.file, check=args.what, n=g.n, q=q, T=g.T)
    if args.what in ("regularity", "osculating"):
        dims = osculating_dimensions(g, q)
        expected = [ambient_dimension(g.n, k) for k in range(1, q + 1)]
        report.update(dims=dims, expected=expected)
        shown = ",".join(map(str, dims))
        if args.what == "regularity":
            ok = is_q_regular(g, q)
            print(f"{'q-regular' if ok else 'not q-regular'}: osculating dims {shown}")
        else:
            ok = dims == expected
            print(f"osculating dims {shown} ({'maximal' if ok else 'expected ' + ','.join(map(str, expected))})")
        report["holds"] = ok
        return EXIT_OK if ok else EXIT_NEGATIVE
    if args.what == "trace":
        if not args.trace_path:
            raise UsageError("check trace needs --trace PATH")
        try:
            doc = read_json(args.trace_path)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read trace {args.trace_path}: {exc}") from None
        problems = verify_trace(doc, g, q)
        report.update(trace=args.trace_path, problems=problems, holds=not problems)
        for p in problems:
            print(p, file=sys.stderr)
        print("trace verified" if not problems else f"trace rejected: {problems[0]}")
        return EXIT_OK if not problems else EXIT_NEGATIVE
    final, trace = _normal_form(g, q)
    if final is None:
        report.update(holds=False, reason=trace.message)
        print(f"no final form: {trace.message}")
        return EXIT_NEGATIVE
    if args.what == "pattern":
        R = check_family_pattern(final)
        report["holds"] = R is not None
        if R is None:
            _, (k, alpha, reason) = family_pattern(final)
            report["failure"] = {"weight": k, "alpha": list(alpha), "reason": reason}
            print(f"pattern fails at weight {k}, x_{alpha}: {reason}")
            return EXIT_NEGATIVE
        report["R"] = {str(k): jet_json(x) for k, x in R.items()}
        for k, x in R.items():
            print(f"R_{k} = {x}", file=sys.stderr)
        print("family pattern holds: " + ", ".join(f"R_{k}={'0' if x.is_zero() else 'nonzero'}" for k, x in R.items()))
        return EXIT_OK
    # rnc-lines
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    failing = []
    for sigma in random_directions(final.n, args.samples, args.seed):
        fit = fit_rnc(line_curve(final, sigma), q)
        print(f"sigma={_sigma_str(sigma)}: {'rational normal curve ' + str(fit) if fit else 'no fit'}", file=sys.stderr)
        if fit is None:
            failing.append(sigma)
    report.update(holds=not failing, failing=[[frac_str(x) for x in s] for s in failing])
    if failing:
        print(f"{len(failing)}/{args.samples} line curves are not rational normal curves, first sigma={_sigma_str(failing[0])}")
        return EXIT_NEGATIVE
    print(f"all {args.samples} sampled line curves are rational normal curves")
    return EXIT_OK


# ---------------------------------------------------------------------------
# reduce / decide


def _describe_certificate(cert) -> str:
    where = f"x_{cert.alpha}" if cert.alpha is not None else "final form"
    return f"{cert.identity} ({cert.kind}) at stage r={cert.r}, {where}"


def cmd_reduce(args, report: dict) -> int:
    g, q = _load(args.file)
    trace = run_pipeline(g, q)
    for s in trace.stages:
        print(f"stage r={s.r}: {s.verdict}", file=sys.stderr)
    doc = trace_json(trace, g, q)
    report.update(file=args.file, verdict=trace.verdict, trace=doc)
    if args.trace_path:
        write_json(doc, args.trace_path)
    if trace.verdict == "reduced":
        nonzero = [a for a in trace.final.alphas if not trace.final.residual(a).is_zero()]
        print(f"reduced: {len(trace.stages)} stages advanced; nonzero final residuals {len(nonzero)}")
        return EXIT_OK
    if trace.verdict == "not-q-regular":
        print(f"not q-regular: {trace.message}")
        return EXIT_NEGATIVE
    print(f"failed: {_describe_certificate(trace.certificate)}")
    print(trace.certificate.statement, file=sys.stderr)
    return EXIT_NEGATIVE


def cmd_decide(args, report: dict) -> int:
    g, q = _load(args.file)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    v = decide_veronese(g, q, args.samples, args.seed)
    print(v.message, file=sys.stderr)
    doc = trace_json(v.trace, g, q, decision=v) if v.trace is not None else None
    report.update(file=args.file, verdict=v.kind, message=v.message, trace=doc)
    if args.trace_path and doc is not None:
        write_json(doc, args.trace_path)
    line = v.kind
    if v.kind == VERONESE:
        line += f" witness={args.trace_path or 'report'}"
    elif v.certificate is not None:
        line += f" certificate={_describe_certificate(v.certificate)}"
    elif v.kind != NOT_PROPERTY_P and v.failing_directions:
        line += f" failing-directions={len(v.failing_directions)}"
    print(line)
    return EXIT_OK if v.kind == VERONESE else EXIT_NEGATIVE


def main(argv=None) -> int:
    parser = build_parser()
    report = {}
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command (generate, check, reduce, decide)")
        if args.trunc is not None and args.trunc < 1:
            raise UsageError("--trunc must be positive")
        if args.command == "generate":
            code = cmd_generate(args)
        elif args.command == "check":
            code = cmd_check(args, report)
        elif args.command == "reduce":
            code = cmd_reduce(args, report)
        else:
            code = cmd_decide(args, report)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "json_out", None):
        report["exit_code"] = code
        write_json(report, args.json_out)
    return code


if __name__ == "__main__":
    sys.exit(main())
