"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (empty or unbounded input,
invalid polytope, empty cut, ...), 2 on usage and parse errors.  Results go
to stdout (or ``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction

from . import formats
from .classify import classify
from .cuts import CutSpec, cut, desingularize_details, find_reeb_covector, link_polytope
from .delzant import synthesize
from .errors import PolySyntaxError, PolytopeError

VERTEX_HELP = (
    "vertex index in lexicographic order of vertex coordinates "
    "(the order printed by 'classify')"
)


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return formats.parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _int_vector(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS,
                        help="output format (default: text)")
    common.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS,
                        help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="toricpoly",
        parents=[common],
        description="Classify, cut and desingularize labeled rational polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help):
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.add_argument("file", help="input .poly file ('-' for stdin)")
        return p

    add("validate", "check that the polytope is simple away from its vertices")
    add("classify", "classify every vertex as smooth, orbifold or singular")
    p = add("cut", "intersect with a rational halfspace (new facet gets label 1)")
    p.add_argument("--normal", type=_int_vector, required=True, metavar="A1,..,AN")
    p.add_argument("--level", type=_rational, required=True, metavar="P/Q")
    p.add_argument("--keep", choices=("ge", "le"), required=True)
    p = add("desingularize", "cut off every singular vertex")
    p.add_argument("--epsilon", type=_rational, metavar="P/Q",
                   help="cut depth (default: chosen automatically)")
    p = add("link", "link polytope of a vertex")
    p.add_argument("--vertex", type=int, required=True, metavar="I", help=VERTEX_HELP)
    p.add_argument("--height", type=_rational, default=Fraction(1), metavar="P/Q")
    add("delzant", "weight matrix and reduction group of the quotient construction")
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _run(args):
    """Return ``(result object, exit status)``."""
    doc = formats.parse(_read(args.file))
    for note in doc.warnings:
        print(f"warning: {note}", file=sys.stderr)
    P = doc.polytope()

    if args.command in ("validate", "classify"):
        report = classify(P)
        status = 0
        if args.command == "validate" and not report.valid:
            print("error: polytope is not simple away from its vertices", file=sys.stderr)
            status = 1
        return report, status

    if args.command == "cut":
        if len(args.normal) != P.dim:
            raise UsageError(f"--normal has {len(args.normal)} entries, polytope has dim {P.dim}")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = cut(P, CutSpec(args.normal, args.level, args.keep))
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return result, 0

    if args.command == "desingularize":
        return desingularize_details(P, args.epsilon), 0

    if args.command == "link":
        if not 0 <= args.vertex < len(P.vertices):
            raise UsageError(f"--vertex must be in 0..{len(P.vertices) - 1}")
        v = P.vertices[args.vertex]
        return link_polytope(P, v, find_reeb_covector(P, v), args.height), 0

    if args.command == "delzant":
        return synthesize(P), 0
    raise UsageError(f"unknown command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "text")
    try:
        result, status = _run(args)
    except (PolySyntaxError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PolytopeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    text = formats.emit(result, fmt, command=args.command)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
