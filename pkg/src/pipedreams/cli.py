"""
Command line entry point.

Exit codes: 0 success, 1 a verification found a failure, 2 invalid input.
JSON and DOT go to stdout unless ``--out`` is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import harness, render
from .errors import InvalidFilling, InvalidShape, NotBelow, NotReduced, NotSortable, PipeDreamError
from .permutation import Permutation
from .pipedream import (
    PipeDream,
    contact_graph,
    enumerate_pipe_dreams,
    flip_graph,
    is_reduced,
    strongly_acyclic_subset,
)
from .quotient import AcyclicOrder, pipe_insert, sweep_trace
from .shape import AlternatingShape, enumerate_shapes

DEFAULT_MAX_CELLS = 12
DEFAULT_MAX_N = 4


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip().startswith("{"):
        return arg
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {arg}: {exc.strerror}") from None


def _load_shape(arg: str) -> AlternatingShape:
    try:
        return AlternatingShape.from_json(_read_text(arg)).check()
    except InvalidShape as exc:
        raise InputError(f"invalid shape: {exc}") from None


def _load_pipe_dream(arg: str) -> PipeDream:
    try:
        return PipeDream.from_json(_read_text(arg))
    except (InvalidShape, InvalidFilling) as exc:
        raise InputError(f"invalid pipe dream: {exc}") from None


def _perm(text: str, n: int, what: str) -> Permutation:
    try:
        w = Permutation.parse(text)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None
    if len(w) != n:
        raise InputError(f"{what} {w} has size {len(w)}, the shape has n={n}")
    return w


def _sortable(shape: AlternatingShape, text: str) -> Permutation:
    omega = _perm(text, shape.n, "--omega")
    if not shape.is_sortable(omega):
        raise InputError(f"not sortable: {omega} has no pipe dream on {shape.label()}")
    return omega


def _capped(shape: AlternatingShape) -> None:
    cap = _env_int("PIPEDREAM_MAX_CELLS", DEFAULT_MAX_CELLS)
    if len(shape.word) > cap:
        raise InputError(
            f"shape has {len(shape.word)} crossable cells, above PIPEDREAM_MAX_CELLS={cap}"
        )


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------


def cmd_shape_validate(args) -> int:
    try:
        shape = AlternatingShape.from_json(_read_text(args.shape))
    except InvalidShape as exc:
        raise InputError(f"invalid shape: {exc}") from None
    ok, diagnostics = shape.validate()
    out = {"valid": ok, "diagnostics": diagnostics}
    if ok:
        out["cells"] = [list(c) for c in sorted(shape.cells)]
        out["word"] = list(shape.word)
        out["complete"] = shape.is_complete()
    _emit(args, json.dumps(out))
    return 0 if ok else 2


def cmd_shape_enumerate(args) -> int:
    shapes = [F.to_dict() for F in enumerate_shapes(args.n, args.max_t)]
    _emit(args, json.dumps(shapes))
    return 0


def cmd_pd_enumerate(args) -> int:
    shape = _load_shape(args.shape)
    omega = _sortable(shape, args.omega)
    _capped(shape)
    found = strongly_acyclic_subset(shape, omega) if args.strongly_acyclic else enumerate_pipe_dreams(shape, omega)
    _emit(args, json.dumps([P.to_dict() for P in found]))
    return 0


def cmd_pd_insert(args) -> int:
    shape = _load_shape(args.shape)
    omega = _sortable(shape, args.omega)
    pi = _perm(args.pi, shape.n, "--pi")
    if not pi.inversions() <= omega.inversions():
        raise InputError(f"not below: {pi} is not below {omega} in the weak order")
    results = {}
    if args.algo in ("sweep", "both"):
        P, trace = sweep_trace(shape, omega, pi)
        results["sweep"] = P
    if args.algo in ("pipes", "both"):
        results["pipes"] = pipe_insert(shape, omega, pi)
    if args.algo == "both" and results["sweep"] != results["pipes"]:
        print("error: the two insertion algorithms disagree", file=sys.stderr)
        return 1
    P = next(iter(results.values()))
    out = P.to_dict()
    if args.trace and "sweep" in results:
        out["trace"] = [str(d) for d in trace]
    text = json.dumps(out)
    if args.ascii:
        text += "\n" + render.ascii(P)
    _emit(args, text)
    return 0


def cmd_pd_render(args) -> int:
    P = _load_pipe_dream(args.pipe_dream)
    P.exit  # a filling whose pipes leave the shape is rejected here
    _emit(args, render.svg(P) if args.format == "svg" else render.ascii(P))
    return 0


def cmd_pd_graph(args) -> int:
    P = _load_pipe_dream(args.pipe_dream)
    if not is_reduced(P):
        raise InputError("not reduced: contact graphs need a reduced pipe dream")
    g = contact_graph(P, extended=args.extended)
    if args.dot:
        _emit(args, g.to_dot("extended_contact" if args.extended else "contact"))
    else:
        _emit(
            args,
            json.dumps({"n": g.n, "extended": g.extended, "arcs": [list(a) for a in sorted(g.arcs)], "acyclic": g.is_acyclic()}),
        )
    return 0


def cmd_pd_flip_graph(args) -> int:
    shape = _load_shape(args.shape)
    omega = _sortable(shape, args.omega)
    _capped(shape)
    g = flip_graph(shape, omega)
    if args.dot:
        _emit(args, g.to_dot())
    else:
        _emit(
            args,
            json.dumps(
                {
                    "nodes": [P.to_dict() for P in g.nodes],
                    "arcs": [list(a) for a in g.arcs],
                    "sources": g.sources,
                    "sinks": g.sinks,
                }
            ),
        )
    return 0


def cmd_lattice_export(args) -> int:
    shape = _load_shape(args.shape)
    omega = _sortable(shape, args.omega)
    _capped(shape)
    order = AcyclicOrder(shape, omega)
    if args.dot:
        _emit(args, order.to_dot())
    else:
        _emit(
            args,
            json.dumps(
                {
                    "elements": [
                        {"pipe_dream": C.pipe_dream.to_dict(), "min": list(C.min), "max": list(C.max)}
                        for C in order.classes
                    ],
                    "covers": [list(a) for a in sorted(order.hasse)],
                }
            ),
        )
    return 0


def cmd_verify(args) -> int:
    try:
        suites = harness.expand(args.suite)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    bound = _env_int("PIPEDREAM_MAX_N", DEFAULT_MAX_N)
    if args.n < 1 or (args.n > bound and args.max_cells is None):
        raise InputError(f"--n must be between 1 and {bound} (PIPEDREAM_MAX_N) unless --max-cells is given")
    if args.max_t is not None and args.max_t < 0:
        raise InputError("--max-t must be >= 0")
    shapes = harness.harness_shapes(args.n, args.max_t, args.max_cells)
    summary = harness.run(shapes, suites)
    _emit(args, summary.to_json())
    return 0 if summary.ok else 1


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pipedreams", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True)

    def out_opt(p):
        p.add_argument("--out", help="write to this file instead of stdout")

    shape = sub.add_parser("shape", help="validate or enumerate alternating shapes")
    shape_sub = shape.add_subparsers(dest="cmd", required=True)
    p = shape_sub.add_parser("validate", help="check a shape and list its cells and word")
    p.add_argument("shape", help="shape JSON file, '-' for stdin, or inline JSON")
    out_opt(p)
    p.set_defaults(func=cmd_shape_validate)
    p = shape_sub.add_parser("enumerate", help="every valid shape with n pipes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-t", type=int, default=None)
    out_opt(p)
    p.set_defaults(func=cmd_shape_enumerate)

    pd = sub.add_parser("pd", help="pipe dream commands")
    pd_sub = pd.add_subparsers(dest="cmd", required=True)
    p = pd_sub.add_parser("enumerate", help="reduced pipe dreams with a given exit permutation")
    p.add_argument("shape")
    p.add_argument("--omega", required=True)
    p.add_argument("--strongly-acyclic", action="store_true", help="keep strongly acyclic ones only")
    out_opt(p)
    p.set_defaults(func=cmd_pd_enumerate)
    p = pd_sub.add_parser("insert", help="the strongly acyclic pipe dream of a permutation")
    p.add_argument("shape")
    p.add_argument("--omega", required=True)
    p.add_argument("--pi", required=True)
    p.add_argument("--algo", choices=("sweep", "pipes", "both"), default="sweep")
    p.add_argument("--ascii", action="store_true", help="append an ASCII picture")
    p.add_argument("--trace", action="store_true", help="include the sweep decisions")
    out_opt(p)
    p.set_defaults(func=cmd_pd_insert)
    p = pd_sub.add_parser("render", help="draw a pipe dream")
    p.add_argument("pipe_dream")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    out_opt(p)
    p.set_defaults(func=cmd_pd_render)
    p = pd_sub.add_parser("graph", help="contact graph of a reduced pipe dream")
    p.add_argument("pipe_dream")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--dot", action="store_true")
    out_opt(p)
    p.set_defaults(func=cmd_pd_graph)
    p = pd_sub.add_parser("flip-graph", help="increasing flip graph")
    p.add_argument("shape")
    p.add_argument("--omega", required=True)
    p.add_argument("--dot", action="store_true")
    out_opt(p)
    p.set_defaults(func=cmd_pd_flip_graph)

    lattice = sub.add_parser("lattice", help="acyclic order")
    lattice_sub = lattice.add_subparsers(dest="cmd", required=True)
    p = lattice_sub.add_parser("export", help="Hasse diagram of the acyclic order")
    p.add_argument("shape")
    p.add_argument("--omega", required=True)
    p.add_argument("--dot", action="store_true")
    out_opt(p)
    p.set_defaults(func=cmd_lattice_export)

    p = sub.add_parser("verify", help="run the exhaustive checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-t", type=int, default=None, help="largest NW stair length (default n)")
    p.add_argument("--max-cells", type=int, default=None, help="only shapes with at most this many cells")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(harness.SUITES)} or all")
    out_opt(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotSortable, NotBelow, NotReduced, InvalidShape, InvalidFilling) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PipeDreamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
