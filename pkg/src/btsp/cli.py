"""Command-line interface.

Exit codes: 0 success / clean result, 1 negative domain result (violations,
not recognisable, infeasible tour, unsupported instance), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .conditions import check_relaxed_van_der_veen, check_van_der_veen
from .core import (DEFAULT_TOLERANCE, ColoringError, MaskedEntryError, Tour,
                   TourError, is_feasible_bipartite, tour_length)
from .fixtures import FIXTURE_NAMES, fixture_instance
from .improvement import improve_to_pyramidal
from .instance import (Instance, InstanceFormatError, dumps, parse_graph,
                       parse_instance)
from .pyramidal import solve_pyramidal_btsp
from .recognition import recognize_full
from .reduction import InstanceTooLargeError, brute_force_btsp, reduce_graph
from .render import render_svg


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _Exit(2, f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Exit(2, f"{path}: invalid JSON ({exc})")


def _instance(args) -> Instance:
    if args.fixture:
        return fixture_instance(args.fixture)
    try:
        return parse_instance(_read_json(args.input))
    except InstanceFormatError as exc:
        raise _Exit(2, f"malformed instance: {exc}")


def _parse_tour(text: str, n: int) -> Tour:
    try:
        seq = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
        t = Tour(seq)
    except (ValueError, TourError) as exc:
        raise _Exit(2, f"bad --tour: {exc}")
    if t.n != n:
        raise _Exit(2, f"bad --tour: {t.n} cities given, instance has {n}")
    return t


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def cmd_check(args) -> int:
    inst = _instance(args)
    checker = check_relaxed_van_der_veen if args.relaxed else check_van_der_veen
    try:
        rep = checker(inst.matrix, args.tolerance)
    except (ValueError, MaskedEntryError) as exc:
        raise _Exit(1, str(exc))
    keys = ("j", "l", "m") if args.relaxed else ("i", "j", "m")
    _emit({
        "family": rep.family,
        "total": rep.total_checked,
        "violated_count": rep.violated_count,
        "violations": [dict(zip(keys, v.indices), slack=v.slack) for v in rep.violations],
        "tolerance": rep.tolerance,
    })
    return 0 if rep.ok else 1


def cmd_solve(args) -> int:
    inst = _instance(args)
    try:
        if args.algorithm == "pyramidal":
            tour, length = solve_pyramidal_btsp(inst.matrix, inst.coloring)
        else:
            tour, length = brute_force_btsp(inst.matrix, inst.coloring)
    except ColoringError as exc:
        raise _Exit(1, f"{exc}; the pyramidal solver is exact only for the even-odd BTSP "
                       "(use --algorithm brute for small instances)")
    except (InstanceTooLargeError, MaskedEntryError, ValueError) as exc:
        raise _Exit(1, str(exc))
    _emit({"tour": list(tour.sequence), "length": length, "algorithm": args.algorithm})
    return 0


def cmd_improve(args) -> int:
    inst = _instance(args)
    t = _parse_tour(args.tour, inst.n)
    if not is_feasible_bipartite(t, inst.coloring):
        raise _Exit(1, f"tour {t} is not a feasible bipartite tour")
    try:
        out, steps = improve_to_pyramidal(inst.matrix, inst.coloring, t)
    except (ColoringError, MaskedEntryError, TourError) as exc:
        raise _Exit(1, str(exc))
    _emit({
        "tour": list(out.sequence),
        "length_before": tour_length(inst.matrix, t),
        "length_after": tour_length(inst.matrix, out),
        "steps": [{"j": s.j, "l": s.l, "m": s.m, "length_before": s.length_before,
                   "length_after": s.length_after, "delta": s.delta} for s in steps],
    })
    return 0


def cmd_recognize(args) -> int:
    inst = _instance(args)
    if not inst.coloring.is_even_odd:
        raise _Exit(1, "recognition works on even-odd instances")
    try:
        full = recognize_full(inst.matrix, args.tolerance)
    except (ValueError, MaskedEntryError) as exc:
        raise _Exit(1, str(exc))
    if full is None:
        _emit({"found": False, "gamma": None, "delta": None})
        return 1
    if args.apply:
        relabeled = inst.relabeled(full.relabeling)
        Path(args.apply).write_text(dumps(relabeled.to_dict()) + "\n")
    _emit({"found": True, "gamma": list(full.result.gamma), "delta": list(full.result.delta),
           "relabeling": list(full.relabeling)})
    return 0


def cmd_reduce(args) -> int:
    try:
        G = parse_graph(_read_json(args.graph))
    except InstanceFormatError as exc:
        raise _Exit(2, f"malformed graph: {exc}")
    C, col = reduce_graph(G)
    _emit(Instance(C, col, name=f"reduction-k{G.k}").to_dict())
    return 0


def cmd_render(args) -> int:
    inst = _instance(args)
    if inst.points is None:
        raise _Exit(1, "no coordinates to render")
    tour = None
    if args.tour:
        tour = _parse_tour(args.tour, inst.n)
    elif args.solve:
        try:
            tour, _ = solve_pyramidal_btsp(inst.matrix, inst.coloring)
        except (ColoringError, ValueError) as exc:
            raise _Exit(1, str(exc))
    svg = render_svg(inst.points, inst.coloring, tour, title=inst.name)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixture", choices=FIXTURE_NAMES, help="built-in instance")
    src.add_argument("--input", metavar="FILE", help="instance JSON file ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="btsp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the Van der Veen conditions")
    _add_source(p)
    p.add_argument("--relaxed", action="store_true", help="check only the relaxed (parity) family")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve the BTSP")
    _add_source(p)
    p.add_argument("--algorithm", choices=("pyramidal", "brute"), default="pyramidal")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("improve", help="turn a feasible tour into a pyramidal one")
    _add_source(p)
    p.add_argument("--tour", required=True, help="comma-separated city sequence")
    p.set_defaults(func=cmd_improve)

    p = sub.add_parser("recognize", help="find a renumbering of blue and red cities")
    _add_source(p)
    p.add_argument("--apply", metavar="OUT", help="write the renumbered instance here")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("reduce", help="build the hardness-reduction matrix of a bipartite graph")
    p.add_argument("graph", help="graph JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("render", help="draw the instance and a tour as SVG")
    _add_source(p)
    p.add_argument("--tour", help="comma-separated city sequence")
    p.add_argument("--solve", action="store_true", help="draw the pyramidal solution")
    p.add_argument("--out", metavar="FILE", help="output file (default stdout)")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"btsp {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
