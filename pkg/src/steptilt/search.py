"""Complete bounded solvers for tilt problems.

Breadth-first search over the configuration graph with a canonical visited
set. Returns a shortest certificate when one exists, reports unsolvability
when the reachable set is exhausted, and gives up only when an explicit node
budget is hit. Certificates are tie-broken lexicographically with
N < E < S < W.

Default-on pruning (disable with ``prune=False``):

* Reachability masks. For each tile that must reach a specific cell, a
  reverse BFS over single-tile moves computes every cell from which that
  target is reachable when the tile moves alone. In a whole-board step a
  tile either stays put or moves one cell in the signalled direction, so
  its true trajectory is always a lazy single-tile walk; any state that
  puts the tile outside its mask is therefore dead.
* Absorbing goal cells (relocation only). If no allowed direction leads out
  of the goal cell, a wrong tile that comes to rest there can never leave.
* Interchangeable-tile symmetry (relocation and occupancy only). Tiles
  other than the designated one are indistinguishable to both the dynamics
  and the goal predicate, so states are canonicalized up to permuting them.

None of these change solvability or shortest certificate length, which the
tests confirm against the unpruned search.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .grid import DIRECTION_ORDER, Board, Cell, Configuration, Direction, apply_sequence
from .occupancy import OccupancyQuery

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Occupancy:
    """Bring any tile onto the query's goal cell."""

    query: OccupancyQuery

    @property
    def config(self) -> Configuration:
        return self.query.config

    @property
    def dirs(self) -> frozenset[Direction]:
        return self.query.dirs


@dataclass(frozen=True)
class Relocation:
    """Bring one designated tile onto a goal cell."""

    config: Configuration
    tile: str
    goal: Cell
    dirs: frozenset[Direction]

    def __post_init__(self) -> None:
        if self.tile not in self.config.tiles:
            raise ValueError(f"no tile labeled {self.tile!r}")
        if not self.config.board.is_open(self.goal):
            raise ValueError(f"goal cell {self.goal} is blocked or out of bounds")
        if not self.dirs:
            raise ValueError("direction set must be nonempty")


@dataclass(frozen=True)
class Reconfiguration:
    """Transform one full labeled configuration into another."""

    config: Configuration
    target: Configuration
    dirs: frozenset[Direction]

    def __post_init__(self) -> None:
        if self.target.board != self.config.board:
            raise ValueError("target must share the start configuration's board")
        if set(self.target.tiles) != set(self.config.tiles):
            raise ValueError("target must share the start configuration's label set")
        if not self.dirs:
            raise ValueError("direction set must be nonempty")


ProblemInstance = Union[Occupancy, Relocation, Reconfiguration]


class SolveStatus(Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    certificate: tuple[Direction, ...] | None = None
    explored: int = 0
    limit: int | None = None


def _satisfied(inst: ProblemInstance, config: Configuration) -> bool:
    if isinstance(inst, Occupancy):
        return inst.query.goal in config.occupied()
    if isinstance(inst, Relocation):
        return config.tiles[inst.tile] == inst.goal
    return config.same_as(inst.target)


def verify_certificate(inst: ProblemInstance, seq: list[Direction]) -> bool:
    """Simulate ``seq`` and check the instance's goal predicate."""
    for d in seq:
        if d not in inst.dirs:
            logger.warning("certificate uses direction %s outside allowed set", d.name)
            return False
    return _satisfied(inst, apply_sequence(inst.config, seq))


def depth_bound(inst: ProblemInstance) -> int | None:
    """Worst-case shortest-certificate length for restricted direction sets.

    For two orthogonal directions the bound is n*(l+w); for three directions
    it is (n*l'+1)*(w'**2+1), where l' is the board extent along the lone
    un-opposed direction and w' the extent along the opposed pair. Absent
    for other direction sets. n is the tile count, l the board height, w
    the width.
    """
    dirs = set(inst.dirs)
    board = inst.config.board
    n = len(inst.config.tiles)
    height, width = board.height, board.width
    if len(dirs) == 2:
        a, b = dirs
        if a.opposite() is b:
            return None
        return n * (height + width)
    if len(dirs) == 3:
        lone = next(d for d in dirs if d.opposite() not in dirs)
        if lone in (Direction.N, Direction.S):
            along, across = height, width
        else:
            along, across = width, height
        return (n * along + 1) * (across * across + 1)
    return None


class _Engine:
    """Integer-indexed step engine: cells are row*width+col, a state is a
    tuple of cell indices in fixed label order."""

    def __init__(self, board: Board, dirs: frozenset[Direction]):
        width, height = board.width, board.height
        self.board = board
        self.size = width * height
        open_ = bytearray(self.size)
        for c in board.open_cells():
            open_[c.row * width + c.col] = 1
        self.open = open_
        self.dirs = [d for d in DIRECTION_ORDER if d in dirs]
        self.ahead: dict[Direction, list[int]] = {}
        self.behind: dict[Direction, list[int]] = {}
        for d in DIRECTION_ORDER:
            arr = [-1] * self.size
            rev = [-1] * self.size
            for idx in range(self.size):
                if not open_[idx]:
                    continue
                r, c = divmod(idx, width)
                nr, nc = r + d.drow, c + d.dcol
                if 0 <= nr < height and 0 <= nc < width:
                    nidx = nr * width + nc
                    if open_[nidx]:
                        arr[idx] = nidx
                        rev[nidx] = idx
            self.ahead[d] = arr
            self.behind[d] = rev

    def encode(self, cell: Cell) -> int:
        return cell.row * self.board.width + cell.col

    def decode(self, idx: int) -> Cell:
        r, c = divmod(idx, self.board.width)
        return Cell(r, c)

    def step(self, pos: tuple[int, ...], d: Direction) -> tuple[int, ...]:
        ahead = self.ahead[d]
        order = sorted(
            range(len(pos)),
            key=pos.__getitem__,
            reverse=d in (Direction.S, Direction.E),
        )
        settled: set[int] = set()
        new = list(pos)
        for i in order:
            a = ahead[pos[i]]
            if a < 0 or a in settled:
                settled.add(pos[i])
            else:
                new[i] = a
        return tuple(new)

    def reach_mask(self, target: int, dirs: frozenset[Direction] | None = None) -> set[int]:
        """Cells from which a lone tile can reach ``target`` under the
        allowed directions (reverse single-tile BFS)."""
        allowed = self.dirs if dirs is None else [d for d in DIRECTION_ORDER if d in dirs]
        seen = {target}
        frontier = [target]
        while frontier:
            nxt = []
            for idx in frontier:
                for d in allowed:
                    prev = self.behind[d][idx]
                    if prev >= 0 and prev not in seen:
                        seen.add(prev)
                        nxt.append(prev)
            frontier = nxt
        return seen

    def absorbing(self, idx: int) -> bool:
        return all(self.ahead[d][idx] < 0 for d in self.dirs)


def solve(
    inst: ProblemInstance,
    budget: int = DEFAULT_BUDGET,
    prune: bool = True,
    threads: int = 1,
) -> SolveResult:
    """Breadth-first search for a shortest certificate.

    ``budget`` caps the number of distinct states visited; hitting it yields
    an EXHAUSTED result. ``threads`` parallelizes frontier expansion; results
    are deterministic regardless of worker count.
    """
    engine = _Engine(inst.config.board, inst.dirs)
    labels = sorted(inst.config.tiles)
    start = tuple(engine.encode(inst.config.tiles[lb]) for lb in labels)

    if isinstance(inst, Occupancy):
        goal_idx = engine.encode(inst.query.goal)
        des = None
        targets = None
    elif isinstance(inst, Relocation):
        goal_idx = engine.encode(inst.goal)
        des = labels.index(inst.tile)
        targets = None
    else:
        goal_idx = None
        des = None
        targets = tuple(engine.encode(inst.target.tiles[lb]) for lb in labels)

    if isinstance(inst, Occupancy):
        def done(pos: tuple[int, ...]) -> bool:
            return goal_idx in pos
    elif isinstance(inst, Relocation):
        def done(pos: tuple[int, ...]) -> bool:
            return pos[des] == goal_idx
    else:
        def done(pos: tuple[int, ...]) -> bool:
            return pos == targets

    masks: list[set[int] | None] = [None] * len(labels)
    goal_absorbing = False
    symmetric = False
    if prune:
        if isinstance(inst, Occupancy):
            mask = engine.reach_mask(goal_idx)
            masks = [mask] * len(labels)
            symmetric = len(labels) > 1
        elif isinstance(inst, Relocation):
            masks[des] = engine.reach_mask(goal_idx)
            goal_absorbing = engine.absorbing(goal_idx)
            symmetric = len(labels) > 2
        else:
            masks = [engine.reach_mask(t) for t in targets]

    def alive(pos: tuple[int, ...]) -> bool:
        if isinstance(inst, Occupancy):
            m = masks[0]
            return m is None or any(p in m for p in pos)
        if isinstance(inst, Relocation):
            m = masks[des]
            if m is not None and pos[des] not in m:
                return False
            if goal_absorbing and goal_idx in pos:
                return False
            return True
        return all(m is None or p in m for p, m in zip(pos, masks))

    if symmetric:
        if des is None:
            def key_of(pos: tuple[int, ...]):
                return tuple(sorted(pos))
        else:
            def key_of(pos: tuple[int, ...]):
                return (pos[des], tuple(sorted(pos[:des] + pos[des + 1:])))
    else:
        def key_of(pos: tuple[int, ...]):
            return pos

    if done(start):
        return SolveResult(SolveStatus.SOLVABLE, (), explored=1)
    if prune and not alive(start):
        return SolveResult(SolveStatus.UNSOLVABLE, explored=1)

    start_key = key_of(start)
    parents: dict = {start_key: None}
    frontier: list[tuple[int, ...]] = [start]
    allowed = engine.dirs
    step = engine.step

    def expand(chunk: list[tuple[int, ...]]):
        out = []
        for pos in chunk:
            pkey = key_of(pos)
            for d in allowed:
                succ = step(pos, d)
                if succ != pos:
                    out.append((succ, d, pkey))
        return out

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            if pool is not None and len(frontier) > 4 * threads:
                size = (len(frontier) + threads - 1) // threads
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                produced: list = []
                for part in pool.map(expand, chunks):
                    produced.extend(part)
            else:
                produced = expand(frontier)
            frontier = []
            for succ, d, pkey in produced:
                key = key_of(succ)
                if key in parents:
                    continue
                if done(succ):
                    word = [d]
                    at = pkey
                    while parents[at] is not None:
                        at, back = parents[at]
                        word.append(back)
                    word.reverse()
                    return SolveResult(
                        SolveStatus.SOLVABLE, tuple(word), explored=len(parents) + 1
                    )
                if prune and not alive(succ):
                    continue
                if len(parents) >= budget:
                    return SolveResult(
                        SolveStatus.EXHAUSTED, explored=len(parents), limit=budget
                    )
                parents[key] = (pkey, d)
                frontier.append(succ)
        return SolveResult(SolveStatus.UNSOLVABLE, explored=len(parents))
    finally:
        if pool is not None:
            pool.shutdown()
