"""Versioned JSON serialization for problem instances.

Schema (``"v": 1``): the board is stored in the text format (``#`` blocked,
``.`` open), tiles as ``{label: [row, col]}``, the problem kind as one of
``occupancy``, ``relocation``, or ``reconfiguration``, and the direction set
as a string over ``NESW``. Occupancy and relocation carry a ``goal`` cell
(relocation also names its ``tile``); reconfiguration carries a ``target``
tile map.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .grid import Board, Cell, Configuration, Direction
from .occupancy import OccupancyQuery
from .search import Occupancy, ProblemInstance, Reconfiguration, Relocation

SCHEMA_VERSION = 1


def _board_text(board: Board) -> str:
    return "\n".join(
        "".join("#" if Cell(r, c) in board.blocked else "." for c in range(board.width))
        for r in range(board.height)
    )


def _board_from_text(text: str) -> Board:
    lines = text.splitlines()
    if not lines or any(len(line) != len(lines[0]) for line in lines):
        raise ValueError("board text must be a nonempty rectangle")
    blocked = {
        Cell(r, c)
        for r, line in enumerate(lines)
        for c, ch in enumerate(line)
        if ch == "#"
    }
    return Board(len(lines[0]), len(lines), frozenset(blocked))


def _dirs_str(dirs: frozenset[Direction]) -> str:
    return "".join(d.name for d in sorted(dirs, key=lambda d: "NESW".index(d.name)))


def _dirs_from_str(text: str) -> frozenset[Direction]:
    return frozenset(Direction[ch] for ch in text)


def instance_to_json(inst: ProblemInstance) -> dict:
    """Plain-dict form of an instance, stable under json round-trips."""
    data = {
        "v": SCHEMA_VERSION,
        "board": _board_text(inst.config.board),
        "tiles": {label: [cell.row, cell.col] for label, cell in sorted(inst.config.tiles.items())},
        "dirs": _dirs_str(inst.dirs),
    }
    if isinstance(inst, Occupancy):
        data["problem"] = "occupancy"
        data["goal"] = [inst.query.goal.row, inst.query.goal.col]
    elif isinstance(inst, Relocation):
        data["problem"] = "relocation"
        data["tile"] = inst.tile
        data["goal"] = [inst.goal.row, inst.goal.col]
    elif isinstance(inst, Reconfiguration):
        data["problem"] = "reconfiguration"
        data["target"] = {
            label: [cell.row, cell.col] for label, cell in sorted(inst.target.tiles.items())
        }
    else:
        raise TypeError(f"unsupported instance type {type(inst).__name__}")
    return data


def instance_from_json(data: dict) -> ProblemInstance:
    if data.get("v") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('v')!r}")
    board = _board_from_text(data["board"])
    tiles = {label: Cell(*cell) for label, cell in data["tiles"].items()}
    config = Configuration(board, tiles)
    dirs = _dirs_from_str(data["dirs"])
    kind = data["problem"]
    if kind == "occupancy":
        return Occupancy(OccupancyQuery(config, Cell(*data["goal"]), dirs))
    if kind == "relocation":
        return Relocation(config, data["tile"], Cell(*data["goal"]), dirs)
    if kind == "reconfiguration":
        target = Configuration(board, {label: Cell(*cell) for label, cell in data["target"].items()})
        return Reconfiguration(config, target, dirs)
    raise ValueError(f"unknown problem kind {kind!r}")


def save_instance(inst: ProblemInstance, path: str | Path) -> None:
    Path(path).write_text(dumps_instance(inst) + "\n")


def load_instance(path: str | Path) -> ProblemInstance:
    return instance_from_json(json.loads(Path(path).read_text()))


def dumps_instance(inst: ProblemInstance) -> str:
    return json.dumps(instance_to_json(inst), indent=2, sort_keys=True)


def instance_digest(inst: ProblemInstance) -> str:
    """Short content hash identifying an instance in reports."""
    return hashlib.sha256(dumps_instance(inst).encode()).hexdigest()[:12]
