"""Command-line surface: simulate, occupancy, solve, reduce, verify, render.

Every subcommand is a thin wrapper over the library; results equal direct
library calls on the same inputs. Exit codes for ``solve`` and ``verify``:
0 solvable/match, 1 unsolvable/mismatch, 2 budget exhausted, 3 input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .grid import (
    Cell,
    Direction,
    parse_board,
    parse_sequence,
    trace_sequence,
)
from .instances import instance_digest, load_instance, save_instance
from .occupancy import OccupancyQuery, solve_occupancy
from .reconf import compile_reconfiguration
from .reloc import compile_relocation
from .render import render_ascii, write_svg
from .sat import brute_force_sat, parse_dimacs
from .search import (
    DEFAULT_BUDGET,
    Occupancy,
    Reconfiguration,
    Relocation,
    SolveStatus,
    solve,
)

EXIT_SOLVABLE = 0
EXIT_UNSOLVABLE = 1
EXIT_EXHAUSTED = 2
EXIT_ERROR = 3


@dataclass
class RunReport:
    """Summary of one solver run."""

    digest: str
    result: str
    certificate_length: int | None
    nodes_expanded: int
    wall_time: float

    def __str__(self) -> str:
        lines = [
            f"instance {self.digest}",
            f"result {self.result}",
        ]
        if self.certificate_length is not None:
            lines.append(f"certificate length {self.certificate_length}")
        lines.append(f"nodes expanded {self.nodes_expanded}")
        lines.append(f"wall time {self.wall_time:.3f}s")
        return "\n".join(lines)


def _parse_dirs(text: str) -> frozenset[Direction]:
    try:
        return frozenset(Direction[ch] for ch in text.upper())
    except KeyError as exc:
        raise ValueError(f"invalid direction character in {text!r}") from exc


def cmd_simulate(args: argparse.Namespace) -> int:
    config = parse_board(Path(args.board).read_text())
    seq = parse_sequence(args.sequence)
    if args.trace:
        for snapshot in trace_sequence(config, seq):
            print(render_ascii(snapshot))
            print()
    else:
        print(render_ascii(trace_sequence(config, seq)[-1]))
    return 0


def cmd_occupancy(args: argparse.Namespace) -> int:
    config = parse_board(Path(args.board).read_text())
    query = OccupancyQuery(config, Cell(args.row, args.col), _parse_dirs(args.dirs))
    witness = solve_occupancy(query)
    if witness is None:
        print("UNSOLVABLE")
        return EXIT_UNSOLVABLE
    print("SOLVABLE", "".join(d.name for d in witness))
    return EXIT_SOLVABLE


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    if args.dirs:
        dirs = _parse_dirs(args.dirs)
        if isinstance(inst, Occupancy):
            inst = Occupancy(OccupancyQuery(inst.config, inst.query.goal, dirs))
        elif isinstance(inst, Relocation):
            inst = Relocation(inst.config, inst.tile, inst.goal, dirs)
        else:
            inst = Reconfiguration(inst.config, inst.target, dirs)
    t0 = time.perf_counter()
    res = solve(inst, budget=args.budget, prune=not args.no_prune, threads=args.threads)
    report = RunReport(
        digest=instance_digest(inst),
        result=res.status.name,
        certificate_length=(
            len(res.certificate) if res.status == SolveStatus.SOLVABLE else None
        ),
        nodes_expanded=res.explored,
        wall_time=time.perf_counter() - t0,
    )
    print(report)
    if res.status == SolveStatus.SOLVABLE:
        if res.certificate:
            print("certificate", "".join(d.name for d in res.certificate))
        return EXIT_SOLVABLE
    if res.status == SolveStatus.UNSOLVABLE:
        return EXIT_UNSOLVABLE
    return EXIT_EXHAUSTED


def _compile(kind: str, path: str):
    f = parse_dimacs(Path(path).read_text())
    if kind == "relocation":
        return f, compile_relocation(f)
    return f, compile_reconfiguration(f)


def cmd_reduce(args: argparse.Namespace) -> int:
    _, inst = _compile(args.kind, args.formula)
    save_instance(inst, args.output)
    goal = inst.goal if isinstance(inst, Relocation) else None
    print(render_ascii(inst.config, goal=goal))
    print(f"wrote {args.output}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    f, inst = _compile(args.kind, args.formula)
    expected = brute_force_sat(f) is not None
    res = solve(inst, budget=args.budget)
    if res.status == SolveStatus.EXHAUSTED:
        print("EXHAUSTED")
        return EXIT_EXHAUSTED
    got = res.status == SolveStatus.SOLVABLE
    if got == expected:
        print(f"MATCH ({'satisfiable' if expected else 'unsatisfiable'})")
        return EXIT_SOLVABLE
    print(f"MISMATCH (oracle {expected}, solver {got})")
    return EXIT_UNSOLVABLE


def cmd_render(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    goal = inst.goal if isinstance(inst, Relocation) else None
    if args.svg:
        write_svg(inst.config, args.svg, goal=goal)
        print(f"wrote {args.svg}")
    else:
        print(render_ascii(inst.config, goal=goal))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steptilt", description="Single-step tilt model toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="apply a direction sequence to a board")
    p.add_argument("board", help="board text file")
    p.add_argument("sequence", help="direction string over NESW")
    p.add_argument("--trace", action="store_true", help="print every intermediate configuration")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("occupancy", help="linear-time occupancy query")
    p.add_argument("board", help="board text file")
    p.add_argument("row", type=int)
    p.add_argument("col", type=int)
    p.add_argument("--dirs", default="NESW")
    p.set_defaults(func=cmd_occupancy)

    p = sub.add_parser("solve", help="breadth-first solve of an instance file")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--dirs", help="override the instance's direction set")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="compile a DIMACS formula to an instance")
    p.add_argument("kind", choices=["relocation", "reconfig"])
    p.add_argument("formula", help="DIMACS CNF file")
    p.add_argument("-o", "--output", required=True, help="instance JSON output path")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="reduce, solve, and compare with the SAT oracle")
    p.add_argument("kind", choices=["relocation", "reconfig"])
    p.add_argument("formula", help="DIMACS CNF file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="render an instance file")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--svg", help="write an SVG to this path instead of ASCII")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
