"""Linear-time occupancy solver.

Decides whether any tile can be brought onto a goal cell under a restricted
direction set, by a single breadth-first search over board cells: search
backward from the goal (an edge from cell c toward the goal in direction d
exists iff d is allowed and the cell ahead is open), stop at the closest
tile, and read off the direction word of its shortest path. Each board cell
is dequeued at most once, so the work is linear in the board size.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .grid import DIRECTION_ORDER, Cell, Configuration, Direction


@dataclass(frozen=True)
class OccupancyQuery:
    """Ask whether some tile can come to rest on ``goal``."""

    config: Configuration
    goal: Cell
    dirs: frozenset[Direction]

    def __post_init__(self) -> None:
        if not self.dirs:
            raise ValueError("direction set must be nonempty")
        if not self.config.board.is_open(self.goal):
            raise ValueError(f"goal cell {self.goal} is blocked or out of bounds")


def solve_occupancy(q: OccupancyQuery) -> list[Direction] | None:
    """Return a step sequence after which some tile occupies ``q.goal``, or
    ``None`` when no tile can ever reach it.

    If the goal is already occupied the empty sequence is returned.
    """
    seq, _ = solve_occupancy_with_stats(q)
    return seq


def solve_occupancy_with_stats(
    q: OccupancyQuery,
) -> tuple[list[Direction] | None, int]:
    """Like :func:`solve_occupancy`, also returning the number of BFS
    dequeues (at most the number of board cells)."""
    board = q.config.board
    occupied = q.config.occupied()
    if q.goal in occupied:
        return [], 0

    allowed = [d for d in DIRECTION_ORDER if d in q.dirs]
    # toward[c] is the first move of the shortest path from c to the goal.
    toward: dict[Cell, Direction] = {}
    seen = {q.goal}
    queue = deque([q.goal])
    dequeues = 0
    while queue:
        cell = queue.popleft()
        dequeues += 1
        if cell in occupied:
            path = []
            at = cell
            while at != q.goal:
                d = toward[at]
                path.append(d)
                at = at.moved(d)
            return path, dequeues
        for d in allowed:
            prev = cell.moved(d.opposite())
            if board.is_open(prev) and prev not in seen:
                seen.add(prev)
                toward[prev] = d
                queue.append(prev)
    return None, dequeues
