"""Command-line front end.

Variable orders are given greatest first, e.g. ``--order "[y,x]"`` makes
``y`` the main variable.  Exit codes: 0 success, 2 bad input, 3 input not
well-oriented under ``--failure err``, 4 equational constraint not in the
main variable.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import distribution, plot_distribution
from .errors import ECNotInMainVariable, NotWellOriented, ParseError
from .lifting import cad_full, eccad, lcad, lvcad, vcad
from .parser import COMMANDS, OUTPUTS, ProblemSpec, parse_problem
from .projection import ECInput, ProjOpKind
from .render import emit_records, render_piecewise

EXIT_OK, EXIT_PARSE, EXIT_NOT_WELL_ORIENTED, EXIT_EC = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="subcad",
        description="Cylindrical algebraic decompositions and layered / variety sub-decompositions.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?",
                    help="polynomial, [p1, p2, ...] or [f, [g1, ...]] (or use --file)")
    ap.add_argument("-f", "--file", help="read the input from this file")
    ap.add_argument("--order", required=True, help='variables, greatest first, e.g. "[y,x]"')
    ap.add_argument("--layers", type=int, help="number of layers for lcad / lvcad / dist")
    ap.add_argument("--method", choices=("collins", "mccallum"), default="mccallum")
    ap.add_argument("--failure", choices=("warn", "err"), default="warn")
    ap.add_argument("--output", choices=OUTPUTS, help="default: count (dist for the dist command)")
    ap.add_argument("--figure", help="with dist output, also write a bar chart to this file")
    return ap


def run(spec: ProblemSpec):
    op = ProjOpKind.COLLINS if spec.method == "collins" else ProjOpKind.MCCALLUM
    data = spec.data
    plain = data.polys if isinstance(data, ECInput) else data
    if spec.command == "full":
        return cad_full(plain, spec.order, op, spec.failure)
    if spec.command == "lcad":
        return lcad(plain, spec.order, spec.layers, op, spec.failure)
    if spec.command == "dist":
        if spec.layers is None:
            return cad_full(plain, spec.order, op, spec.failure)
        return lcad(plain, spec.order, spec.layers, op, spec.failure)
    if spec.command == "eccad":
        return eccad(data, spec.order, spec.failure)
    if spec.command == "vcad":
        return vcad(data, spec.order, spec.failure)
    return lvcad(data, spec.order, spec.layers, spec.failure)


def render(result, output: str, figure: str | None = None) -> str:
    if output == "count":
        return "%d\n" % len(result.cells)
    if output == "records":
        return emit_records(result)
    if output == "piecewise":
        return render_piecewise(result)
    dist = distribution(result)
    if figure:
        plot_distribution(dist, figure, "cells by dimension")
    return "".join("%d\t%d\n" % (d, dist.counts[d]) for d in sorted(dist.counts, reverse=True))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    output = args.output or ("dist" if args.command == "dist" else "count")
    try:
        if args.file:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        elif args.input is not None:
            text = args.input
        else:
            raise ParseError("no input given")
        spec = parse_problem(text, args.order, args.command, args.layers, args.method,
                             args.failure, output)
        result = run(spec)
    except ParseError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    except NotWellOriented as e:
        print("FAIL: %s" % e, file=sys.stderr)
        return EXIT_NOT_WELL_ORIENTED
    except ECNotInMainVariable as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_EC
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    for w in result.warnings:
        print("Warning: %s" % w.text(result.order), file=sys.stderr)
    sys.stdout.write(render(result, output, args.figure))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
