"""Compile 3-CNF formulas into reconfiguration instances limited to {S, E}.

The construction places one room per clause plus a shared south forcer and a
south limiter, all opening onto a one-cell-wide channel along the west edge
that no tile can enter (entering would need a west move). Signals are counted
by east drift: tile columns advance one per E signal, so the global E count e
acts as a clock that every room reads simultaneously.

Each variable k owns the assignment window e in {5k-5, 5k-4}. A south signal
at the early tick sets the variable true, at the late tick false; this is the
single-step reading of the assignment pairs (S then E for true, E then S for
false). The forcer holds one tile pair per variable on a ledge that ends in a
three-cell pit with an open floor: the pair can only leave the ledge through
the pit, so some window signal must fall inside the window, and a second
south signal before the pair walks off the pit floor drops it through into a
sealed well, so no window admits two.

A clause room seeds one tile per distinct literal on a top corridor, positive
occurrences of variable k at column 5(k-1)+1 and negated ones at 5(k-1).
Under the corridor, a single chamber mouth per variable sits at column
10k-9: the true-tick places the positive tile over it and the false-tick the
negative tile, so exactly the satisfied literal falls through; the other tile
stays on the sealed corridor and drifts east. Repeated literals contribute
permanent corridor riders seeded east of every mouth. The corridor ends in a
two-cell wall passage: riders pack against the east wall and leave through
the single floor opening, while a sealed trap sits under the third queue
position. A clause with no satisfied literal packs all three tiles, and the
first wall signal drops the westmost into the trap, severing it from its
goal notch.

A gate tile per room closes the timing gap between the assignment phase and
wall packing: it rides a private ledge whose floor is open (and sealed below)
for exactly that interval of the clock, so any south signal fired there
strands it. Once packing completes, signals are free; tiles drain through
the chamber exits or the wall passage onto a merge corridor, descend a
staircase of 3(m-1)+2 steps, and settle into three goal notches in reverse
seed order. The limiter tile falls one row on every south signal down a shaft
whose goal seat sits above further open cells, so a run must spend exactly
the budgeted number of south signals, no more.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grid import Board, Cell, Configuration, Direction
from .sat import CnfFormula, Literal

Clause = tuple[Literal, Literal, Literal]
from .search import Reconfiguration

TRUE_PAIR = (Direction.S, Direction.E)
FALSE_PAIR = (Direction.E, Direction.S)

RECONF_DIRS = frozenset({Direction.S, Direction.E})


@dataclass(frozen=True)
class ReconfGadget:
    """One room of the construction, in room-local coordinates."""

    kind: str
    width: int
    height: int
    cells: frozenset[Cell]
    seed_tiles: tuple[tuple[str, Cell], ...] = ()
    goal_tiles: tuple[tuple[str, Cell], ...] = ()

    def __post_init__(self) -> None:
        for cell in self.cells:
            if not (0 <= cell.row < self.height and 0 <= cell.col < self.width):
                raise ValueError(f"cell {cell} outside {self.height}x{self.width} gadget")
        for _, cell in self.seed_tiles + self.goal_tiles:
            if cell not in self.cells:
                raise ValueError(f"tile cell {cell} is not open")


def corridor_length(n: int) -> int:
    """Top corridor length; long enough that riders reach the east wall only
    after the gate interval opens and packing completes before it closes."""
    return max(10 * n + 4, 15 * n - 6)


def staircase_steps(m: int) -> int:
    """Steps from clause m's merge corridor down to its goal notches."""
    return 3 * (m - 1) + 2


def south_budget(f: CnfFormula) -> int:
    """Exact number of south signals a solving run must spend."""
    deepest = staircase_steps(len(f.clauses)) if f.clauses else 2
    return f.num_vars + deepest + 12


def _distinct_literals(clause: Clause) -> list[Literal]:
    out: list[Literal] = []
    for lit in clause:
        if lit not in out:
            out.append(lit)
    return out


def make_clause_gadget(m: int, n: int, clause: Clause) -> ReconfGadget:
    """Room for clause ``m`` (1-based) over ``n`` variables."""
    if m < 1 or n < 1:
        raise ValueError("clause index and variable count must be positive")
    for var, _ in clause:
        if not 1 <= var <= n:
            raise ValueError(f"variable {var} out of range 1..{n}")

    t = corridor_length(n)
    wall = t - 1
    steps = staircase_steps(m)
    chamber_east = 10 * n - 5
    stair_col = wall + 2
    zone_row = 6 + steps
    zone_col = stair_col + steps
    gate_row = zone_row + 3
    width = stair_col + steps + 8
    height = gate_row + 2

    cells: set[Cell] = set()
    cells.update(Cell(1, c) for c in range(t))
    for var in sorted({v for v, _ in clause}):
        cells.add(Cell(2, 10 * var - 9))
    cells.add(Cell(2, wall - 2))  # trap under the third queue position
    cells.update(Cell(r, wall) for r in range(2, 6))
    cells.update(Cell(3, c) for c in range(1, chamber_east + 1))
    for c in range(chamber_east - 2, chamber_east + 1):
        cells.add(Cell(4, c))
        cells.add(Cell(5, c))
    cells.update(Cell(6, c) for c in range(chamber_east - 2, stair_col + 1))
    for s in range(1, steps + 1):
        cells.add(Cell(6 + s, stair_col + s - 1))
        cells.add(Cell(6 + s, stair_col + s))
    cells.update(Cell(zone_row, zone_col + c) for c in range(7))
    for c in (1, 3, 5):
        cells.add(Cell(zone_row + 1, zone_col + c))
    cells.update(Cell(gate_row, c) for c in range(width))
    for c in range(5 * n, t - 3):  # gate doom interval
        cells.add(Cell(gate_row + 1, c))
    cells.update(Cell(gate_row + 1, c) for c in range(t - 2, width))

    seeds: list[Cell] = []
    for var, sign in _distinct_literals(clause):
        seeds.append(Cell(1, 5 * (var - 1) + (1 if sign else 0)))
    for c in (10 * n - 7, 10 * n - 8):
        if len(seeds) == 3:
            break
        seeds.append(Cell(1, c))
    seeds.sort(key=lambda cell: cell.col)

    seed_tiles = [(f"c{m}t{j}", cell) for j, cell in enumerate(seeds, 1)]
    goal_tiles = [
        (f"c{m}t1", Cell(zone_row + 1, zone_col + 5)),
        (f"c{m}t2", Cell(zone_row + 1, zone_col + 3)),
        (f"c{m}t3", Cell(zone_row + 1, zone_col + 1)),
    ]
    seed_tiles.append((f"g{m}", Cell(gate_row, 0)))
    goal_tiles.append((f"g{m}", Cell(gate_row + 1, width - 1)))

    return ReconfGadget(
        "Clause", width, height, frozenset(cells),
        tuple(seed_tiles), tuple(goal_tiles),
    )


def make_south_forcer(n: int) -> ReconfGadget:
    """One ledge-and-pit row per variable, each holding a pair of tiles."""
    if n < 1:
        raise ValueError("need at least one variable")
    width = 5 * n + 4
    height = 3 * n + 2
    cells: set[Cell] = set()
    seed_tiles: list[tuple[str, Cell]] = []
    goal_tiles: list[tuple[str, Cell]] = []
    for k in range(1, n + 1):
        ledge = 3 * k - 2
        pit_lo, pit_hi = 5 * k - 5, 5 * k - 3
        cells.update(Cell(ledge, c) for c in range(pit_hi + 1))
        cells.update(Cell(ledge + 1, c) for c in range(pit_lo, width))
        cells.update(Cell(ledge + 2, c) for c in range(pit_lo, pit_hi + 1))
        seed_tiles += [(f"f{k}a", Cell(ledge, 0)), (f"f{k}b", Cell(ledge, 1))]
        goal_tiles += [
            (f"f{k}a", Cell(ledge + 1, width - 2)),
            (f"f{k}b", Cell(ledge + 1, width - 1)),
        ]
    return ReconfGadget(
        "SouthForcer", width, height, frozenset(cells),
        tuple(seed_tiles), tuple(goal_tiles),
    )


def make_south_limiter(n: int, budget: int | None = None) -> ReconfGadget:
    """A shaft whose tile falls on every south signal; the goal seat sits
    ``budget`` rows down with open cells below, so overshooting is fatal."""
    if n < 1:
        raise ValueError("need at least one variable")
    if budget is None:
        budget = n + 1
    cells = frozenset(Cell(r, 0) for r in range(1, budget + 3))
    return ReconfGadget(
        "SouthLimiter", 1, budget + 3, cells,
        (("L", Cell(1, 0)),), (("L", Cell(1 + budget, 0)),),
    )


@dataclass
class ReconfLayout:
    """Assembled rooms plus the start and target configurations."""

    clause_gadgets: list[ReconfGadget]
    south_limiter: ReconfGadget
    south_forcer: ReconfGadget
    start: Configuration = field(repr=False)
    target: Configuration = field(repr=False)
    origins: tuple[Cell, ...] = ()
    """Northwest corners of the rooms, clause gadgets first, then the
    forcer and the limiter."""


def reconfiguration_layout(f: CnfFormula) -> ReconfLayout:
    n = f.num_vars
    clause_gadgets = [
        make_clause_gadget(m, n, clause) for m, clause in enumerate(f.clauses, 1)
    ]
    forcer = make_south_forcer(n)
    limiter = make_south_limiter(n, south_budget(f))
    rooms = clause_gadgets + [forcer, limiter]

    width = 2 + max(room.width for room in rooms)
    open_cells: set[Cell] = set()
    start_tiles: dict[str, Cell] = {}
    target_tiles: dict[str, Cell] = {}
    off = 1
    origins: list[Cell] = []
    for room in rooms:
        origins.append(Cell(off, 2))
        for cell in room.cells:
            open_cells.add(Cell(off + cell.row, 2 + cell.col))
        # Rooms attach to the west channel at their northwest corner cells;
        # the joints point west, so no tile can ever enter them.
        for row in range(room.height):
            if Cell(row, 0) in room.cells:
                open_cells.add(Cell(off + row, 1))
        for label, cell in room.seed_tiles:
            start_tiles[label] = Cell(off + cell.row, 2 + cell.col)
        for label, cell in room.goal_tiles:
            target_tiles[label] = Cell(off + cell.row, 2 + cell.col)
        off += room.height + 1
    height = off
    open_cells.update(Cell(r, 0) for r in range(height))

    blocked = frozenset(
        Cell(r, c)
        for r in range(height)
        for c in range(width)
        if Cell(r, c) not in open_cells
    )
    board = Board(width, height, blocked)
    return ReconfLayout(
        clause_gadgets,
        limiter,
        forcer,
        Configuration(board, start_tiles),
        Configuration(board, target_tiles),
        tuple(origins),
    )


def compile_reconfiguration(f: CnfFormula) -> Reconfiguration:
    """Reduce satisfiability of ``f`` to solvability of a reconfiguration
    instance limited to south and east signals."""
    layout = reconfiguration_layout(f)
    return Reconfiguration(layout.start, layout.target, RECONF_DIRS)


def gadget_manifest() -> dict[str, dict[str, str]]:
    """Pinned dimensions and contracts of the reconfiguration rooms."""
    return {
        "Clause": {
            "footprint": "width (corridor length) + 3(m-1)+2 + 10, height 3(m-1) + 13",
            "corridor": "row 1, length max(10n+4, 15n-6); wall passage with a"
                        " sealed trap under the third queue position",
            "mouths": "one per distinct variable at column 10k-9, reached at"
                      " the true tick by the positive tile and at the false"
                      " tick by the negative tile",
            "seeds": "positive literal of variable k at column 5(k-1)+1,"
                     " negated at 5(k-1); repeated literals become permanent"
                     " corridor riders seeded east of every mouth",
            "zone": "staircase of 3(m-1)+2 steps down to three goal notches"
                    " filled in reverse seed order",
            "gate": "one extra tile whose ledge floor opens over a sealed well"
                    " for clock ticks [5n, corridor-4], barring south signals"
                    " between the assignment phase and wall packing",
        },
        "SouthForcer": {
            "footprint": "width 5n+4, height 3n+2",
            "tiles": "2 tiles in a row for every distinct variable",
            "row k": "ledge ending in a three-cell pit over a sealed well at"
                     " columns 5(k-1)..5(k-1)+2; exactly one south signal per"
                     " assignment window, goals east of the pit in seed order",
        },
        "SouthLimiter": {
            "footprint": "width 1, height budget+3",
            "tile": "seeded at the northwest corner, falls one row per south"
                    " signal; goal seat at the budget depth with open cells"
                    " below, so a run spends exactly the budget",
        },
    }
