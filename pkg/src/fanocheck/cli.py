"""Command line front end.

Exit codes: 0 success / all checks pass, 1 a corpus check failed,
2 bad input (syntax errors, schema violations, unusable options).
"""

from __future__ import annotations

import argparse
import sys

from . import chow as chowmod
from . import corpus as corpusmod
from . import delpezzo
from .geometry import HypersurfaceVariety, parse_ambient, smoothness_verdict
from .poly import AlgebraError, ParseError, VariableSet, delta1, parse_poly
from .splitting import HypersurfaceRing, delta1_probe, fedder_fsplit, mono_str


class InputError(Exception):
    pass


def _parse_vars_spec(spec: str) -> VariableSet:
    """Comma list of names with optional :weight, e.g. 'x0,x1,x2,x3,y:3'."""
    names, weights = [], []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise InputError("empty variable entry in --vars")
        if ":" in part:
            name, _, w = part.partition(":")
            try:
                weight = int(w)
            except ValueError:
                raise InputError(f"bad weight in {part!r}") from None
        else:
            name, weight = part, 1
        if weight < 1:
            raise InputError(f"weight must be positive in {part!r}")
        names.append(name.strip())
        weights.append(weight)
    try:
        return VariableSet.weighted(names, weights)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_int_list(text: str, what: str) -> list:
    try:
        return [int(part.strip()) for part in text.split(",")]
    except ValueError:
        raise InputError(f"bad {what}: {text!r}") from None


def _cmd_fsplit(args) -> int:
    vset = _parse_vars_spec(args.vars)
    f = parse_poly(args.poly, vset, args.prime)
    ring = HypersurfaceRing(args.prime, vset, f)
    ring.degree  # surface inhomogeneity as an input error
    verdict = fedder_fsplit(ring)
    print(verdict.status.value)
    if verdict.witness is not None:
        print(f"witness: {mono_str(vset, verdict.witness)}")
    return 0


def _cmd_delta1(args) -> int:
    vset = _parse_vars_spec(args.vars)
    f = parse_poly(args.poly, vset, args.prime)
    if args.probe:
        a, b, s = _parse_int_list(args.probe, "--probe (need a,b,s)")[:3]
        ring = HypersurfaceRing(args.prime, vset, f)
        print(delta1_probe(ring, a, b, s))
    else:
        print(delta1(f))
    return 0


def _cmd_smooth(args) -> int:
    names = [s.strip() for s in args.vars.split(",")] if args.vars else None
    space = parse_ambient(args.ambient, names)
    f = parse_poly(args.poly, space.variable_set, args.prime)
    variety = HypersurfaceVariety(args.prime, space, f)
    print(smoothness_verdict(variety).value)
    return 0


def _build_chow_ring(args) -> chowmod.IntersectionRing:
    base = chowmod.ProductBase(tuple(_parse_int_list(args.base, "--base")))
    bundle = None
    if args.bundle:
        twists = tuple(
            tuple(_parse_int_list(part, "--bundle twist"))
            for part in args.bundle.split(";")
        )
        bundle = chowmod.SplitBundleSpec(base, twists)
    return chowmod.IntersectionRing(base, bundle)


def _cmd_chow(args) -> int:
    if bool(args.expr) == bool(args.canonical):
        raise InputError("need exactly one of --expr or --canonical")
    try:
        ring = _build_chow_ring(args)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.canonical:
        print(chowmod.div_class_str(ring, chowmod.canonical_class(ring)))
    else:
        el = chowmod.evaluate_expression(ring, args.expr)
        print(chowmod.expression_result_str(ring, el))
    return 0


def _cmd_lattice(args) -> int:
    if args.action != "exc":
        raise InputError(f"unknown lattice action {args.action!r}")
    if args.langer:
        if args.points != 7:
            raise InputError("the Langer configuration needs --points 7")
        print(corpusmod.langer_summary())
        return 0
    lattice = delpezzo.PicLattice(args.points)
    classes = delpezzo.enumerate_classes(lattice, -1, -1, args.dmax)
    print(f"exceptional classes (d <= {args.dmax}): {len(classes)}")
    return 0


def _cmd_verify(args) -> int:
    report = corpusmod.run_corpus(args.corpus, jobs=args.jobs)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return 0 if report.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanocheck",
        description="Exact splitting, smoothness, intersection and lattice checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fsplit", help="Frobenius splitting verdict for a hypersurface")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("--vars", required=True,
                   help="comma list of names with optional :weight, e.g. x0,x1,y:3")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_fsplit)

    p = sub.add_parser("delta1", help="first Witt carry, optionally probed mod p^s")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("--vars", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--probe", help="a,b,s: print f^a * delta1(f)^b mod (x_i^(p^s))")
    p.set_defaults(func=_cmd_delta1)

    p = sub.add_parser("smooth", help="smoothness verdict for a hypersurface")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("--ambient", required=True,
                   help="e.g. 'P(1,1,1,1,3)' or 'P(1,1,1) x P(1,1,1)'")
    p.add_argument("--vars", help="optional flat comma list of variable names")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("chow", help="intersection numbers and canonical classes")
    p.add_argument("--base", required=True, help="factor dimensions, e.g. '1,1,1'")
    p.add_argument("--bundle", help="twists per summand, e.g. '0,0;1,0;0,1'")
    p.add_argument("--expr", help="class expression, e.g. 'deg((2*h1+3*h2)^3)'")
    p.add_argument("--canonical", action="store_true",
                   help="print the canonical class")
    p.set_defaults(func=_cmd_chow)

    p = sub.add_parser("lattice", help="exceptional-class counts in Pic of blow-ups")
    p.add_argument("action", choices=["exc"])
    p.add_argument("--points", type=int, default=7)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--langer", action="store_true",
                   help="counts for the blown-up 7-point plane")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("verify", help="run a corpus of expected verdicts")
    p.add_argument("corpus")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, AlgebraError,
            corpusmod.CorpusFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
