"""Command-line driver.

Exit codes: 0 verified/true, 1 refuted, 2 usage or input error, 3 inconclusive.
The environment variable ``DMKIT_DMAX`` sets the default truncation limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .algebra import Field, RationalPoint, RingSpec
from .dmcheck import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    NotVerified,
    choose_exponent,
    default_dmax,
    dm_check,
    exponent_scan,
    generic_counterexample,
    reduction_corollary_check,
    rush_example_check,
)
from .errors import DMKitError, ParseError, SchemaError
from .exprio import dump_report, load_series, parse_point, parse_poly
from .groebner import Ideal, global_generator_bound, minimal_generators_at, mu_at_point, reduction_number
from .series import content, expand, series_mul, truncated_content

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_EXIT_FOR = {VERIFIED: EXIT_OK, REFUTED: EXIT_REFUTED, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(DMKitError):
    pass


def _emit(args, payload: dict, lines):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for line in lines:
            print(line)


def _read_series(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_series(text)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc.message}", exc.path) from None


def _env_dmax():
    raw = os.environ.get("DMKIT_DMAX")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"DMKIT_DMAX must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("DMKIT_DMAX must be non-negative")
    return value


def _dmax(args, f, g, k):
    if args.dmax is not None:
        return args.dmax
    env = _env_dmax()
    return env if env is not None else default_dmax(f, g, k)


def _pair(args):
    f, g = _read_series(args.f), _read_series(args.g)
    if f.ring != g.ring:
        raise UsageError("f and g are declared over different rings")
    return f, g


def _exponent(args, g):
    pt = parse_point(args.point, g.ring) if args.point else None
    if args.k is not None:
        bound = global_generator_bound(content(g)) if not g.is_zero() else None
        return args.k, "user", bound, pt
    k, source, bound = choose_exponent(g, pt)
    return k, source, bound, pt


def _report_lines(rep):
    lines = [
        f"verdict          {rep.verdict}",
        f"exponent k       {rep.k} ({rep.k_source})",
        f"d_cert           {'-' if rep.d_cert is None else rep.d_cert}  (searched to {rep.d_max})",
        f"lhs fingerprint  {rep.lhs_fingerprint}",
        f"rhs fingerprint  {rep.rhs_fingerprint}",
    ]
    if rep.generator_bound is not None:
        lines.append(f"generator bound  {rep.generator_bound}")
    if rep.exponent_scan:
        lines.append("exponent scan    " + ", ".join(f"k={k}: {v}" for k, v in rep.exponent_scan))
    if rep.min_exponent is not None:
        lines.append(f"min exponent     {rep.min_exponent}")
    if rep.reduction_number is not None:
        lines.append(f"reduction number {rep.reduction_number}")
    if rep.witness is not None:
        lines.append(f"witness          {rep.witness}")
    for c in rep.certificates:
        lines.append(f"certificate      {c.target} = " + " + ".join(
            f"({q})*({g})" for q, g in zip(c.cofactors, c.generators) if q))
    return lines


def cmd_content(args):
    f = _read_series(args.series)
    I = content(f)
    gens = [str(a) for a in I.gens]
    gb = [str(a) for a in I.groebner()]
    _emit(args, {"generators": gens, "groebner_basis": gb, "ring": f.ring.describe()}, [
        "content     " + ("(" + ", ".join(gens) + ")" if gens else "(0)"),
        "groebner    " + ("(" + ", ".join(gb) + ")" if gb else "(0)"),
    ])
    return EXIT_OK


def cmd_dm(args):
    f, g = _pair(args)
    k, source, bound, pt = _exponent(args, g)
    d_max = _dmax(args, f, g, k)
    rep = dm_check(f, g, k, d_max, k_source=source, certificates=args.certificates,
                   point=pt, generator_bound=bound, seed=args.seed)
    if args.min_exponent:
        rep.exponent_scan = exponent_scan(f, g, args.kmax or max(k, 1), d_max)
        last_k, last_verdict = rep.exponent_scan[-1]
        rep.min_exponent = last_k if last_verdict == VERIFIED else None
    if args.reduction and rep.verified:
        J = truncated_content(series_mul(expand(f, rep.d_cert), expand(g, rep.d_cert)), rep.d_cert)
        rep.reduction_number = reduction_number(J, content(f) * content(g), k - 1)
    if args.json:
        sys.stdout.write(dump_report(rep))
    else:
        for line in _report_lines(rep):
            print(line)
    return _EXIT_FOR[rep.verdict]


def cmd_reduction(args):
    f, g = _pair(args)
    k, _, _, _ = _exponent(args, g)
    try:
        rep = reduction_corollary_check(f, g, k, _dmax(args, f, g, k))
    except NotVerified as exc:
        _emit(args, {"verdict": exc.report.verdict, "k": k},
              [f"dm_check at k = {k} was {exc.report.verdict}; no reduction certificate"])
        return _EXIT_FOR[exc.report.verdict]
    _emit(args, rep.to_dict(), [
        f"exponent k        {rep.k}",
        f"d_cert            {rep.d_cert}{' (exact content)' if rep.exact else ''}",
        f"reduction number  {rep.reduction_number}  (bound k-1 = {rep.k - 1})",
        f"corollary         {'holds' if rep.holds else 'FAILS'}",
    ])
    return EXIT_OK if rep.holds else EXIT_REFUTED


def cmd_counterexample(args):
    rep = generic_counterexample(args.k, Field.parse(args.field))
    _emit(args, rep.to_dict(), [
        f"ring             {rep.ring.field.name}[{', '.join(rep.ring.variables)}]",
        ("inequality certified; witness " + str(rep.witness)) if rep.inequality_certified
        else "inequality NOT certified",
        f"mu(c(g')) at 0   {rep.mu}",
        f"contrast k={rep.contrast.k}     {rep.contrast.verdict} (d_cert {rep.contrast.d_cert})",
    ])
    return EXIT_OK if rep.passed else EXIT_REFUTED


def cmd_rush(args):
    rep = rush_example_check(args.depth)
    lines = ["coefficients of fg  " + ", ".join(str(c) for c in rep.coefficients)]
    lines.append("c(fg) = c(g)        " + ("yes" if rep.contents_equal else "NO")
                 + "  groebner (" + ", ".join(str(c) for c in rep.content_g) + ")")
    for c in rep.certificates:
        lines.append(f"lift {str(c.target):<6}         " + ", ".join(str(q) for q in c.cofactors))
    for c in rep.printed_certificates:
        lines.append(f"printed {str(c.target):<6}      " + ", ".join(str(q) for q in c.cofactors)
                     + ("  valid" if c.is_valid() else "  INVALID"))
    lines.append(f"c(f) = R check      {rep.proposition.verdict} at depth {rep.proposition.d_cert}")
    _emit(args, rep.to_dict(), lines)
    return EXIT_OK if rep.passed else EXIT_REFUTED


def _ring_for(args, sources):
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
    else:
        import re

        names = sorted({t for s in sources for t in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", s)})
    try:
        return RingSpec(tuple(names), Field.parse(args.field), args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_mu(args):
    text = args.gens
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from None
    sources = [s.strip() for s in text.replace("\n", ",").split(",") if s.strip()]
    ring = _ring_for(args, sources)
    I = Ideal(ring, [parse_poly(s, ring) for s in sources])
    pt = parse_point(args.point, ring) if args.point else RationalPoint.origin(ring)
    mu = mu_at_point(I, pt)
    kept = minimal_generators_at(I, pt)
    _emit(args, {"mu": mu, "point": [str(c) for c in pt.coords], "minimal_generators": [str(p) for p in kept],
                 "ring": ring.describe()}, [str(mu), "minimal generators: " + ", ".join(str(p) for p in kept)])
    return EXIT_OK


def cmd_corpus(args):
    from .corpus import FAMILIES, run_corpus

    families = tuple(FAMILIES) if args.family == "all" else (args.family,)
    rep = run_corpus(args.seed, args.count, families, jobs=args.jobs)
    lines = [f"seed {rep.seed}, {rep.count} pairs per family",
             f"{'family':<14}{'verified':>10}{'corollary':>11}{'max k':>7}{'max d_cert':>12}"]
    for fam, row in rep.summary().items():
        lines.append(f"{fam:<14}{row['verified']:>6}/{row['pairs']:<3}{row['corollary']:>7}/{row['pairs']:<3}"
                     f"{row['max_k']:>7}{row['max_d_cert']:>12}")
    _emit(args, rep.to_dict(), lines)
    if rep.all_verified:
        return EXIT_OK
    if any(r.verdict == REFUTED for r in rep.results):
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="dmkit", description="Content ideals and Dedekind-Mertens certificates.")
    parser.add_argument("--version", action="version", version=f"dmkit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("content", parents=[common], help="content ideal of a series document")
    p.add_argument("series")
    p.set_defaults(func=cmd_content)

    for name, func, help_text in (("dm", cmd_dm, "check c(f)^k c(g) = c(f)^(k-1) c(fg)"),
                                  ("reduction", cmd_reduction, "reduction number of c(fg) in c(f)c(g)")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("f")
        p.add_argument("g")
        p.add_argument("--k", type=_positive)
        p.add_argument("--point", help="comma-separated coordinates of a rational point")
        p.add_argument("--dmax", type=_nonneg)
        p.set_defaults(func=func)
        if name == "dm":
            p.add_argument("--min-exponent", action="store_true")
            p.add_argument("--kmax", type=_positive)
            p.add_argument("--reduction", action="store_true", help="also compute the reduction number")
            p.add_argument("--certificates", action="store_true", help="attach lift certificates")
            p.add_argument("--seed", type=int)

    p = sub.add_parser("counterexample", parents=[common], help="generic degree-k pair")
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("rush", parents=[common], help="recheck the u, v example with f = v + X")
    p.add_argument("--depth", type=_positive, default=4)
    p.set_defaults(func=cmd_rush)

    p = sub.add_parser("mu", parents=[common], help="local generator count of an ideal")
    p.add_argument("gens", help="comma-separated generators, or @file")
    p.add_argument("--point")
    p.add_argument("--vars", help="comma-separated ring variables (default: identifiers, sorted)")
    p.add_argument("--field", default="Q")
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("corpus", parents=[common], help="seeded random pairs")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--family", default="all", choices=["all", "Q[u,v]", "F101[x,y,z]"])
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"dmkit: schema error at {'/'.join(map(str, exc.path)) or '<root>'}: {exc.message}", file=sys.stderr)
    except ParseError as exc:
        print(f"dmkit: parse error: {exc}", file=sys.stderr)
    except (DMKitError, ValueError) as exc:
        print(f"dmkit: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
