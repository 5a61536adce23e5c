"""Board and configuration data model, the step-transformation engine, and the
geometry-hierarchy classifier.

Coordinate convention: row 0 is the northmost row and column 0 the westmost
column.  N decreases the row, S increases it, E increases the column and W
decreases it.  All types in this module are treated as immutable values, so
``step`` and ``classify`` are pure functions that are safe to call from many
threads concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping


class Direction(Enum):
    """Cardinal direction of a global step signal."""

    N = (-1, 0)
    E = (0, 1)
    S = (1, 0)
    W = (0, -1)

    @property
    def drow(self) -> int:
        return self.value[0]

    @property
    def dcol(self) -> int:
        return self.value[1]

    def opposite(self) -> "Direction":
        return _OPPOSITE[self]


_OPPOSITE = {
    Direction.N: Direction.S,
    Direction.S: Direction.N,
    Direction.E: Direction.W,
    Direction.W: Direction.E,
}

#: Deterministic direction order used for neighbor expansion and tie-breaking.
DIRECTION_ORDER = (Direction.N, Direction.E, Direction.S, Direction.W)


def parse_direction(ch: str) -> Direction:
    try:
        return Direction[ch.upper()]
    except KeyError:
        raise ValueError(f"invalid direction {ch!r}; expected one of N, E, S, W")


def parse_sequence(text: str) -> list[Direction]:
    """Parse a direction word such as ``"SEES"`` into a step sequence."""
    return [parse_direction(ch) for ch in text.strip()]


def format_sequence(seq: Iterable[Direction]) -> str:
    return "".join(d.name for d in seq)


@dataclass(frozen=True, order=True)
class Cell:
    """A board coordinate; row 0 is north, column 0 is west."""

    row: int
    col: int

    def moved(self, d: Direction) -> "Cell":
        return Cell(self.row + d.drow, self.col + d.dcol)


@dataclass(frozen=True)
class Board:
    """Rectangular grid partitioned into open and blocked (concrete) cells."""

    width: int
    height: int
    blocked: frozenset[Cell] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("board dimensions must be positive")
        for c in self.blocked:
            if not self.in_bounds(c):
                raise ValueError(f"blocked cell {c} outside the {self.height}x{self.width} board")
        if len(self.blocked) >= self.width * self.height:
            raise ValueError("board has no open cells")

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell.row < self.height and 0 <= cell.col < self.width

    def is_open(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and cell not in self.blocked

    def open_cells(self) -> Iterator[Cell]:
        for row in range(self.height):
            for col in range(self.width):
                cell = Cell(row, col)
                if cell not in self.blocked:
                    yield cell

    @property
    def size(self) -> int:
        return self.width * self.height


class GeometryClass(Enum):
    """Board geometry hierarchy, most general first.

    The classes above ``DISCONNECTED`` are strictly nested:
    ``RECTANGULAR < CONVEX < MONOTONE < SIMPLE < CONNECTED``.
    """

    DISCONNECTED = 0
    CONNECTED = 1
    SIMPLE = 2
    MONOTONE = 3
    CONVEX = 4
    RECTANGULAR = 5

    def at_least(self, other: "GeometryClass") -> bool:
        return self.value >= other.value


@dataclass
class Configuration:
    """A board together with labeled tiles on distinct open cells.

    Treated as an immutable value: the step engine returns new configurations
    instead of mutating.
    """

    board: Board
    tiles: dict[str, Cell]

    def __post_init__(self) -> None:
        seen: dict[Cell, str] = {}
        for label, cell in self.tiles.items():
            if not label:
                raise ValueError("tile labels must be nonempty")
            if not self.board.is_open(cell):
                raise ValueError(f"tile {label!r} at {cell} is not on an open cell")
            if cell in seen:
                raise ValueError(f"tiles {seen[cell]!r} and {label!r} share cell {cell}")
            seen[cell] = label

    def key(self) -> tuple[tuple[str, Cell], ...]:
        """Canonical representation: sorted (label, cell) pairs."""
        return tuple(sorted(self.tiles.items()))

    def occupied(self) -> frozenset[Cell]:
        return frozenset(self.tiles.values())

    def same_as(self, other: "Configuration", labeled: bool = True) -> bool:
        """Equality of tile placements; ``labeled=False`` ignores labels."""
        if self.board != other.board:
            return False
        if labeled:
            return self.tiles == other.tiles
        return self.occupied() == other.occupied()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.board == other.board and self.tiles == other.tiles

    def __hash__(self) -> int:
        return hash((self.board, self.key()))


def step(config: Configuration, d: Direction) -> Configuration:
    """Apply one global step signal in direction ``d``.

    A tile is frozen when its neighbor in direction ``d`` is out of bounds,
    blocked, or a frozen tile; the frozen set is the least fixpoint of that
    rule (computed here with a worklist, which is order-independent).  All
    unfrozen tiles then translate one cell in ``d`` simultaneously.
    """
    board = config.board
    occupied = config.occupied()
    frozen: set[Cell] = set()
    changed = True
    while changed:
        changed = False
        for label, cell in config.tiles.items():
            if cell in frozen:
                continue
            nbr = cell.moved(d)
            if not board.is_open(nbr) or nbr in frozen:
                frozen.add(cell)
                changed = True
    new_tiles = {
        label: (cell if cell in frozen else cell.moved(d))
        for label, cell in config.tiles.items()
    }
    return Configuration(board, new_tiles)


def step_swept(config: Configuration, d: Direction) -> Configuration:
    """Single-pass implementation of ``step`` via a directional sweep.

    Tiles are processed from the leading edge backwards; a tile moves exactly
    when its target cell is open and not occupied by an already-settled tile.
    Kept as an independent implementation of the same fixpoint, cross-checked
    against ``step`` in the test suite and used by the solvers for speed.
    """
    board = config.board

    def progress(cell: Cell) -> int:
        return cell.row * d.drow + cell.col * d.dcol

    settled: set[Cell] = set()
    new_tiles: dict[str, Cell] = {}
    for label, cell in sorted(config.tiles.items(), key=lambda kv: progress(kv[1]), reverse=True):
        nbr = cell.moved(d)
        target = nbr if board.is_open(nbr) and nbr not in settled else cell
        settled.add(target)
        new_tiles[label] = target
    return Configuration(board, new_tiles)


def apply_sequence(config: Configuration, seq: Iterable[Direction]) -> Configuration:
    """Left fold of ``step`` over the sequence; the empty sequence is identity."""
    for d in seq:
        config = step(config, d)
    return config


def trace_sequence(config: Configuration, seq: Iterable[Direction]) -> list[Configuration]:
    """All intermediate configurations, starting with the input (length |seq|+1)."""
    out = [config]
    for d in seq:
        config = step(config, d)
        out.append(config)
    return out


def _components(cells: set[Cell]) -> list[set[Cell]]:
    remaining = set(cells)
    comps = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        queue = deque([seed])
        while queue:
            c = queue.popleft()
            for d in DIRECTION_ORDER:
                n = c.moved(d)
                if n in remaining:
                    remaining.discard(n)
                    comp.add(n)
                    queue.append(n)
        comps.append(comp)
    return comps


def _runs_contiguous(cells_by_line: dict[int, list[int]]) -> bool:
    for positions in cells_by_line.values():
        if positions and max(positions) - min(positions) + 1 != len(positions):
            return False
    return True


def row_monotone(board: Board) -> bool:
    """Every row's open cells form at most one contiguous run."""
    rows: dict[int, list[int]] = {}
    for c in board.open_cells():
        rows.setdefault(c.row, []).append(c.col)
    return _runs_contiguous(rows)


def col_monotone(board: Board) -> bool:
    """Every column's open cells form at most one contiguous run."""
    cols: dict[int, list[int]] = {}
    for c in board.open_cells():
        cols.setdefault(c.col, []).append(c.row)
    return _runs_contiguous(cols)


def has_hole(board: Board) -> bool:
    """A hole is a 4-connected component of blocked cells with no cell on the
    board's border (hence unreachable from the exterior through blocked cells)."""
    for comp in _components(set(board.blocked)):
        if not any(
            c.row == 0 or c.col == 0 or c.row == board.height - 1 or c.col == board.width - 1
            for c in comp
        ):
            return True
    return False


def classify(board: Board) -> GeometryClass:
    """Most specific geometry class of the board's open region."""
    open_set = set(board.open_cells())
    if len(_components(open_set)) > 1:
        return GeometryClass.DISCONNECTED
    if has_hole(board):
        return GeometryClass.CONNECTED
    by_row = row_monotone(board)
    by_col = col_monotone(board)
    if not (by_row or by_col):
        return GeometryClass.SIMPLE
    if not (by_row and by_col):
        return GeometryClass.MONOTONE
    rows = {c.row for c in open_set}
    cols = {c.col for c in open_set}
    if len(open_set) == len(rows) * len(cols):
        return GeometryClass.RECTANGULAR
    return GeometryClass.CONVEX


def parse_board(text: str) -> Configuration:
    """Parse the board text format: ``#`` blocked, ``.`` open, and any other
    non-space character a tile with that one-character label."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ValueError("empty board text")
    width = len(lines[0])
    if any(len(line) != width for line in lines):
        raise ValueError("ragged board text: all lines must have equal length")
    blocked: set[Cell] = set()
    tiles: dict[str, Cell] = {}
    for row, line in enumerate(lines):
        for col, ch in enumerate(line):
            cell = Cell(row, col)
            if ch == "#":
                blocked.add(cell)
            elif ch == ".":
                continue
            elif ch.isspace():
                raise ValueError(f"unexpected whitespace at {cell}")
            else:
                if ch in tiles:
                    raise ValueError(f"duplicate tile label {ch!r}")
                tiles[ch] = cell
    board = Board(width=width, height=len(lines), blocked=frozenset(blocked))
    return Configuration(board, tiles)


def serialize_board(config: Configuration) -> str:
    """Inverse of ``parse_board``; requires one-character tile labels.

    Multi-character labels live in the instance JSON sidecar; use
    ``steptilt.render.render_ascii`` for a lossy display of those.
    """
    for label in config.tiles:
        if len(label) != 1 or label in "#.":
            raise ValueError(f"label {label!r} cannot be serialized to board text")
    by_cell = {cell: label for label, cell in config.tiles.items()}
    board = config.board
    lines = []
    for row in range(board.height):
        chars = []
        for col in range(board.width):
            cell = Cell(row, col)
            if cell in by_cell:
                chars.append(by_cell[cell])
            elif cell in board.blocked:
                chars.append("#")
            else:
                chars.append(".")
        lines.append("".join(chars))
    return "\n".join(lines)
