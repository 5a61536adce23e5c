"""Compile 3SAT formulas into single-designated-tile relocation instances
on a monotone board restricted to the directions {S, E}.

Construction overview
---------------------
The board is one diagonal chain of gadgets.  Corridor gadgets are 4x4
with a fixed "spine" running head (0,0) -> (1,0) -> (1,1) -> (1,2) ->
(1,3) -> (2,3) -> foot (3,3); consecutive gadgets share the foot/head
binding cell, so the whole chain advances southeast.  A full traversal
of one gadget is one *round*.

Three round words matter (each moves every unconfined tile exactly one
gadget forward):

* TRUE_WORD    <S,S,E,E,E,S,S>  dips into the west pocket position,
* FALSE_WORD   <S,E,S,E,E,S,S>  dips into the east pocket position,
* TRANSIT_WORD <S,E,E,E,S,S>    dips into neither.

Corridor gadget kinds differ only in which pocket cells are open.  A
Positive gadget opens the west pocket (2,0), so the true word confines a
tile riding through it; a Negative gadget opens the east pocket (2,1)
for the false word; a Notch opens both; Buffers open neither and pass
every round word.  The Notch's two pockets communicate eastward: a tile
parked at (2,0) slides to (2,1) on the next east signal, so repeated
true-word dips park up to two tiles in one Notch and a third arrival
finds the west pocket full and rides on.

The Start and Assignment gadgets are 5x4 with a short row 1 and a full
row 2.  The true word sinks the designated tile down the west column
into row 2 and the false word routes it over (1,1); either way it rides
row 2 east and uses all four south signals of its round to reach the
foot.  The narrow row 1 and the sealed trap (3,1) make these the only
two surviving round shapes: a dip-free round word walks the tile off
the end of row 1 and the late south signals drop it through (2,1) into
the trap, while a second dip in one round finds it already at (2,1) and
the extra south signal buries it the same way.  A round that would
confine both polarities of a variable, or none, therefore costs the
chooser the designated tile.

The Goal gadget holds a validation ladder of one stage per assignment
round.  The validation tile advances exactly one stage per assignment:
each stage is a small checker that passes the true word and the false
word from its entry to its exit and tips every other round shape into an
open doom row.  From there every column of the ladder drains south into
the hallway that the designated tile must cross on its final approach,
and the hallway leads only east into the dead-end goal shaft, so a
deviating validation tile rides towards the shaft bottom b inexorably
and blocks the goal.  After its last stage the honestly guided tile
steps east off the ladder into a sealed rest cell and plays no further
part.  In particular the one profitable deviation, a double dip that
would confine both polarities of a variable in a single round, walks the
validation tile into the doom row on its second dip signal.

The three parking rounds use the true word while the designated tile
crosses an Assignment gadget, which absorbs the extra dip as its normal
west-column descent; each clause's surviving literal
tiles, arriving at their terminal Notch n rounds apart, park in its two
pockets.  A third survivor cannot park: it rides ahead of the designated
tile, reaches the Goal hallway first, falls into the dead-end shaft, and
permanently blocks the shaft bottom b, the relocation goal.  The long
notch run before the formula section is sized so that every such
runaway clears all pocketed gadgets while the designated tile is still
inside notches, where dips are suicide.

Known limitation
----------------
The round structure is enforced locally, not globally: a schedule that
drifts out of phase with the intended rounds can re-synchronize later.
Against an exhaustive adversary this lets one degenerate board through,
the formula with a unit clause and its negation on one variable, where
an off-phase schedule confines both polarities without losing the
designated tile.  Larger unsatisfiable formulas at these sizes are
rejected correctly, and the reconfiguration compiler handles the
degenerate formula correctly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import Board, Cell, Configuration, Direction, parse_sequence
from .sat import CnfFormula
from .search import Relocation

TRUE_WORD = parse_sequence("SSEEESS")
FALSE_WORD = parse_sequence("SESEESS")
TRANSIT_WORD = parse_sequence("SEEESS")

LADDER_KINDS = ("Start", "Assignment")
CORRIDOR_KINDS = ("Positive", "Negative", "Buffer", "Notch")
GADGET_KINDS = LADDER_KINDS + CORRIDOR_KINDS + ("Goal",)

_SPINE = frozenset(
    [Cell(0, 0), Cell(1, 0), Cell(1, 1), Cell(1, 2), Cell(1, 3), Cell(2, 3), Cell(3, 3)]
)
_WEST_POCKET = Cell(2, 0)
_EAST_POCKET = Cell(2, 1)

# Start/Assignment footprint: head shaft, a two-cell row 1, a full row 2
# transit lane, a sealed trap under (2,1), and the foot descent.  See the
# module docstring for why row 1 stops at column 1.
_LADDER_CELLS = frozenset(
    [
        Cell(0, 0),
        Cell(1, 0),
        Cell(1, 1),
        Cell(2, 0),
        Cell(2, 1),
        Cell(2, 2),
        Cell(2, 3),
        Cell(3, 1),
        Cell(3, 3),
        Cell(4, 3),
    ]
)

# One validation stage, relative to its north-west corner.  The entry is
# (0,0) and the exit (4,3); chained stages share the exit/entry cell and
# drift three columns east per stage, exactly like the riders below.
# Row 3 is the doom row: (3,1) catches the second dip of a double-dip
# round, (3,2) catches dip-free round shapes, and both drain south.
_STAGE_CELLS = (
    Cell(0, 0),
    Cell(1, 0),
    Cell(1, 1),
    Cell(1, 2),
    Cell(2, 0),
    Cell(2, 1),
    Cell(2, 2),
    Cell(2, 3),
    Cell(3, 0),
    Cell(3, 1),
    Cell(3, 2),
    Cell(3, 3),
    Cell(4, 3),
)
VALIDATION_TILE = "w"


@dataclass(frozen=True)
class Gadget:
    kind: str
    width: int
    height: int
    open_cells: frozenset[Cell]
    head: Cell
    foot: Cell
    seed_tiles: tuple[tuple[str, Cell], ...] = ()
    goal_marks: tuple[tuple[str, Cell], ...] = ()

    def __post_init__(self) -> None:
        if self.head.col != 0:
            raise ValueError("gadget head must lie on the west edge")
        if self.foot.row != self.height - 1:
            raise ValueError("gadget foot must lie on the south edge")

    @property
    def footprint(self) -> Board:
        blocked = frozenset(
            Cell(r, c)
            for r in range(self.height)
            for c in range(self.width)
            if Cell(r, c) not in self.open_cells
        )
        return Board(self.width, self.height, blocked)


def goal_shaft_depth(n: int) -> int:
    return n + 10


def _make_goal(n: int) -> Gadget:
    depth = goal_shaft_depth(n)
    hall_row = 4 * n + 3
    shaft_col = 3 * n
    cells: set[Cell] = set()
    for s in range(1, n + 1):
        r0, c0 = 4 * (s - 1), 3 * s - 2
        for cell in _STAGE_CELLS:
            cells.add(Cell(r0 + cell.row, c0 + cell.col))
    # sealed rest for the honestly guided validation tile, east of the
    # final stage exit and out of reach of the hallway
    cells.add(Cell(4 * n, 3 * n + 2))
    cells.add(Cell(4 * n + 1, 3 * n + 2))
    # every ladder column drains south into the hallway
    stage_bottom = {}
    for cell in cells:
        stage_bottom[cell.col] = max(stage_bottom.get(cell.col, 0), cell.row)
    for c in range(1, 3 * n + 1):
        for r in range(stage_bottom[c] + 1, hall_row):
            cells.add(Cell(r, c))
    head = Cell(hall_row - 1, 0)
    cells.add(head)
    for c in range(0, shaft_col + 1):
        cells.add(Cell(hall_row, c))
    for r in range(hall_row + 1, hall_row + depth + 1):
        cells.add(Cell(r, shaft_col))
    bottom = Cell(hall_row + depth, shaft_col)
    return Gadget(
        "Goal",
        3 * n + 3,
        bottom.row + 1,
        frozenset(cells),
        head,
        bottom,
        seed_tiles=((VALIDATION_TILE, Cell(0, 1)),),
        goal_marks=(("r", bottom),),
    )


def make_gadget(kind: str, n: int | None = None) -> Gadget:
    """Build one gadget footprint. ``n`` (number of variables) is required
    for the Goal gadget, whose validation ladder and shaft grow with it."""
    if kind in LADDER_KINDS:
        seeds = (("r", Cell(0, 0)),) if kind == "Start" else ()
        return Gadget(kind, 4, 5, _LADDER_CELLS, Cell(0, 0), Cell(4, 3), seed_tiles=seeds)
    if kind in CORRIDOR_KINDS:
        cells = set(_SPINE)
        if kind in ("Positive", "Notch"):
            cells.add(_WEST_POCKET)
        if kind in ("Negative", "Notch"):
            cells.add(_EAST_POCKET)
        return Gadget(kind, 4, 4, frozenset(cells), Cell(0, 0), Cell(3, 3))
    if kind == "Goal":
        if n is None or n < 1:
            raise ValueError("Goal gadget needs the variable count n >= 1")
        return _make_goal(n)
    raise ValueError(f"unknown gadget kind {kind!r}")


@dataclass(frozen=True)
class Chain:
    gadgets: tuple[Gadget, ...]

    def __post_init__(self) -> None:
        if not self.gadgets:
            raise ValueError("empty chain")

    @property
    def origins(self) -> tuple[Cell, ...]:
        """Placement origin of each gadget; consecutive feet and heads
        coincide.  Normalized so the northernmost open cell sits at row 0."""
        result = []
        origin = Cell(0, 0)
        for i, g in enumerate(self.gadgets):
            if i > 0:
                prev = self.gadgets[i - 1]
                bind_col = origin.col + prev.foot.col
                if bind_col - g.head.col < 0:
                    raise ValueError("column misalignment between bound gadgets")
                origin = Cell(origin.row + prev.foot.row - g.head.row, bind_col - g.head.col)
            result.append(origin)
        shift = max(0, -min(o.row for o in result))
        if shift:
            result = [Cell(o.row + shift, o.col) for o in result]
        return tuple(result)

    @property
    def height(self) -> int:
        origins = self.origins
        return max(o.row + g.height for o, g in zip(origins, self.gadgets))

    @property
    def width(self) -> int:
        origins = self.origins
        return max(o.col + g.width for o, g in zip(origins, self.gadgets))

    def open_cells(self) -> frozenset[Cell]:
        cells = set()
        for origin, g in zip(self.origins, self.gadgets):
            for cell in g.open_cells:
                cells.add(Cell(origin.row + cell.row, origin.col + cell.col))
        return frozenset(cells)

    def to_board(self) -> Board:
        w, h = self.width, self.height
        open_cells = self.open_cells()
        blocked = frozenset(
            Cell(r, c) for r in range(h) for c in range(w) if Cell(r, c) not in open_cells
        )
        return Board(w, h, blocked)


def chain_of(*gadgets: Gadget) -> Chain:
    return Chain(tuple(gadgets))


def bind(a: Chain, b: Chain) -> Chain:
    """Concatenate two chains foot-to-head."""
    merged = Chain(a.gadgets + b.gadgets)
    merged.origins  # validates binding alignment
    return merged


def _clause_subchain(n: int, var: int, positive: bool) -> list[str]:
    kinds = ["Buffer"] * n
    kinds[var - 1] = "Positive" if positive else "Negative"
    return kinds


def relocation_sections(f: CnfFormula) -> dict[str, int]:
    """Gadget counts of each board section."""
    n = f.num_vars
    clause_len = 7 * n + 2
    v = n + clause_len * len(f.clauses)
    return {
        "assignment": n,  # Start plus n-1 Assignment gadgets
        "transit": 2 * n,  # notches crossed while literal tiles settle
        "parking": 2 * n + 1,  # notches with assignments at the parking rounds
        "clause": clause_len,
        "validation": n,  # buffers leading into the Goal gadget
        "v": v,
        "total": (6 * n + 1) + v + clause_len * len(f.clauses),
    }


def relocation_layout(f: CnfFormula) -> tuple[list[str], list[tuple[str, int]]]:
    """Gadget kind sequence plus 1-based seed positions of the literal
    tiles."""
    n = f.num_vars
    clause_len = 7 * n + 2
    v = relocation_sections(f)["v"]

    kinds: list[str] = []
    # one assignment round per variable
    kinds += ["Start"] + ["Assignment"] * (n - 1)
    # corridor up to the clause chains, one gadget crossed per round
    kinds += ["Notch"] * (2 * n)
    # the designated tile stands on an Assignment gadget exactly at the
    # three parking rounds, so the parking dips cannot strand it
    kinds += [
        "Assignment" if p in (1, n + 1, 2 * n + 1) else "Notch"
        for p in range(1, 2 * n + 2)
    ]
    kinds += ["Notch"] * v
    # formula section
    literal_seeds: list[tuple[str, int]] = []  # (label, gadget index 1-based)
    for c, clause in enumerate(f.clauses, start=1):
        base = len(kinds)
        for j, (var, pol) in enumerate(clause, start=1):
            literal_seeds.append((f"c{c}l{j}", base + (j - 1) * n + 1))
            kinds += _clause_subchain(n, var, pol)
        kinds += ["Buffer"] * (2 * n) + ["Notch"]
        kinds += ["Buffer"] * (2 * n + 1)
        assert len(kinds) - base == clause_len
    # run-out into the Goal gadget
    kinds += ["Buffer"] * (n - 1) + ["Goal"]
    return kinds, literal_seeds


def compile_relocation(f: CnfFormula) -> Relocation:
    """Build the relocation instance: assignment gadgets, corridor, one
    chain per clause, then the Goal gadget with the shaft-bottom goal."""
    n = f.num_vars
    kinds, literal_seeds = relocation_layout(f)
    gadgets = tuple(
        make_gadget(kind, n) if kind == "Goal" else make_gadget(kind) for kind in kinds
    )
    chain = Chain(gadgets)
    origins = chain.origins
    board = chain.to_board()

    tiles = {}
    for origin, g in zip(origins, gadgets):
        for label, cell in g.seed_tiles:
            tiles[label] = Cell(origin.row + cell.row, origin.col + cell.col)
    for label, index in literal_seeds:
        origin = origins[index - 1]
        head = gadgets[index - 1].head
        tiles[label] = Cell(origin.row + head.row, origin.col + head.col)

    goal_origin = origins[-1]
    goal_cell = Cell(
        goal_origin.row + gadgets[-1].foot.row, goal_origin.col + gadgets[-1].foot.col
    )
    config = Configuration(board, tiles)
    dirs = frozenset([Direction.S, Direction.E])
    return Relocation(config, "r", goal_cell, dirs)


def relocation_certificate(f: CnfFormula, assignment: dict[int, bool]) -> list[Direction]:
    """Round word realizing a satisfying assignment: n truth rounds,
    transit rounds with true-word dips at the three parking rounds, then
    the hallway crossing and the final shaft descent."""
    n = f.num_vars
    total = relocation_sections(f)["total"]
    parking = {3 * n + 1, 4 * n + 1, 5 * n + 1}
    word: list[Direction] = []
    for cycle in range(1, total):  # one round per gadget before the Goal
        if cycle <= n:
            word += TRUE_WORD if assignment[cycle] else FALSE_WORD
        elif cycle in parking:
            word += TRUE_WORD
        else:
            word += TRANSIT_WORD
    word += [Direction.S] + [Direction.E] * (3 * n)
    word += [Direction.S] * goal_shaft_depth(n)
    return word


def gadget_manifest() -> dict:
    """Dimensions and binding locations of every gadget kind."""
    entries = {}
    for kind in LADDER_KINDS + CORRIDOR_KINDS:
        g = make_gadget(kind)
        entries[kind] = {
            "width": g.width,
            "height": g.height,
            "head": [g.head.row, g.head.col],
            "foot": [g.foot.row, g.foot.col],
            "open_cells": sorted([c.row, c.col] for c in g.open_cells),
        }
    entries["Goal"] = {
        "width": "3n + 3",
        "height": "4n + 4 + shaft(n) where shaft(n) = n+10",
        "head": "(4n+2, 0), below a validation ladder of n stages",
        "goal": "shaft bottom (4n+3+shaft(n), 3n)",
    }
    return entries
