"""ASCII and SVG renderings of boards and configurations.

Both renderers are deterministic: identical input produces byte-identical
output, so renders can be diffed or content-addressed.
"""

from __future__ import annotations

from pathlib import Path

from .grid import Cell, Configuration

_CELL = 16  # SVG pixels per board cell


def render_ascii(config: Configuration, goal: Cell | None = None) -> str:
    """Text rendering: ``#`` blocked, ``.`` open, ``*`` the goal cell, and
    the last character of each tile's label."""
    by_cell = {cell: label for label, cell in sorted(config.tiles.items())}
    board = config.board
    lines = []
    for row in range(board.height):
        chars = []
        for col in range(board.width):
            cell = Cell(row, col)
            if cell in by_cell:
                chars.append(by_cell[cell][-1])
            elif cell == goal:
                chars.append("*")
            elif cell in board.blocked:
                chars.append("#")
            else:
                chars.append(".")
        lines.append("".join(chars))
    return "\n".join(lines)


def render_svg(config: Configuration, goal: Cell | None = None) -> str:
    """Scalable rendering: blocked cells dark, open cells light, the goal
    outlined, tiles as labeled disks."""
    board = config.board
    width, height = board.width * _CELL, board.height * _CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#f5f0e6"/>',
    ]
    for cell in sorted(board.blocked):
        parts.append(
            f'<rect x="{cell.col * _CELL}" y="{cell.row * _CELL}" '
            f'width="{_CELL}" height="{_CELL}" fill="#44403a"/>'
        )
    for row in range(board.height + 1):
        parts.append(
            f'<line x1="0" y1="{row * _CELL}" x2="{width}" y2="{row * _CELL}" '
            f'stroke="#d0c8b8" stroke-width="1"/>'
        )
    for col in range(board.width + 1):
        parts.append(
            f'<line x1="{col * _CELL}" y1="0" x2="{col * _CELL}" y2="{height}" '
            f'stroke="#d0c8b8" stroke-width="1"/>'
        )
    if goal is not None:
        parts.append(
            f'<rect x="{goal.col * _CELL + 1}" y="{goal.row * _CELL + 1}" '
            f'width="{_CELL - 2}" height="{_CELL - 2}" fill="none" '
            f'stroke="#c0392b" stroke-width="2"/>'
        )
    for label, cell in sorted(config.tiles.items()):
        cx = cell.col * _CELL + _CELL // 2
        cy = cell.row * _CELL + _CELL // 2
        parts.append(
            f'<circle cx="{cx}" cy="{cy}" r="{_CELL // 2 - 2}" fill="#2d6a9f"/>'
        )
        parts.append(
            f'<text x="{cx}" y="{cy + 3}" font-size="8" text-anchor="middle" '
            f'fill="#ffffff" font-family="monospace">{label[-1]}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def write_svg(config: Configuration, path: str | Path, goal: Cell | None = None) -> None:
    Path(path).write_text(render_svg(config, goal) + "\n")
