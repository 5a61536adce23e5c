"""Tests for the bounded configuration-space solver.

oracle_solve is an independent plain BFS over whole configurations using the
public step function, with no pruning, no symmetry reduction, and its own
goal predicates. It is frozen: do not edit it to match the solver."""

import random

import pytest

from steptilt.grid import (
    Cell,
    Configuration,
    Direction,
    apply_sequence,
    parse_board,
    step,
)
from steptilt.occupancy import OccupancyQuery
from steptilt.search import (
    Occupancy,
    Reconfiguration,
    Relocation,
    SolveResult,
    SolveStatus,
    _Engine,
    depth_bound,
    solve,
    verify_certificate,
)

from test_grid import random_configuration

# ---------------------------------------------------------------------------
# Independent oracle
# ---------------------------------------------------------------------------


def _oracle_done(inst, config: Configuration) -> bool:
    if isinstance(inst, Occupancy):
        return inst.query.goal in set(config.tiles.values())
    if isinstance(inst, Relocation):
        return config.tiles[inst.tile] == inst.goal
    return config.tiles == inst.target.tiles


def oracle_solve(inst) -> int | None:
    """Shortest solution length by exhaustive labeled BFS, or None."""
    if _oracle_done(inst, inst.config):
        return 0
    seen = {tuple(sorted(inst.config.tiles.items()))}
    frontier = [inst.config]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for cfg in frontier:
            for d in inst.dirs:
                after = step(cfg, d)
                key = tuple(sorted(after.tiles.items()))
                if key in seen:
                    continue
                if _oracle_done(inst, after):
                    return depth
                seen.add(key)
                nxt.append(after)
        frontier = nxt
    return None


def random_instance(rng: random.Random):
    config = random_configuration(rng, max_side=6, max_tiles=3, min_tiles=1)
    dirs = frozenset(rng.sample(list(Direction), rng.randint(1, 4)))
    kind = rng.randrange(3)
    if kind == 0:
        label = rng.choice(sorted(config.tiles))
        goal = rng.choice(sorted(config.board.open_cells()))
        return Relocation(config, label, goal, dirs)
    if kind == 1:
        goal = rng.choice(sorted(config.board.open_cells()))
        return Occupancy(OccupancyQuery(config, goal, dirs))
    if rng.random() < 0.6:
        word = [rng.choice(sorted(dirs, key=lambda d: d.name)) for _ in range(rng.randint(0, 8))]
        target = apply_sequence(config, word)
    else:
        cells = rng.sample(sorted(config.board.open_cells()), len(config.tiles))
        target = Configuration(config.board, dict(zip(sorted(config.tiles), cells)))
    return Reconfiguration(config, target, dirs)


# ---------------------------------------------------------------------------
# Pinned examples
# ---------------------------------------------------------------------------

SE = frozenset({Direction.S, Direction.E})


def test_identity_reconfiguration():
    config = parse_board("a.b\n...")
    res = solve(Reconfiguration(config, config, SE))
    assert res.status is SolveStatus.SOLVABLE
    assert res.certificate == ()


def test_simple_relocation():
    res = solve(Relocation(parse_board("a.."), "a", Cell(0, 2), SE))
    assert res.status is SolveStatus.SOLVABLE
    assert res.certificate == (Direction.E, Direction.E)


def test_lexicographic_tie_break():
    res = solve(Relocation(parse_board("a.\n.."), "a", Cell(1, 1), SE))
    assert res.certificate == (Direction.E, Direction.S)


def test_unsolvable_relocation():
    res = solve(Relocation(parse_board("a.\n.."), "a", Cell(0, 0), SE))
    assert res.status is SolveStatus.SOLVABLE  # already there
    res = solve(Relocation(parse_board(".a\n.."), "a", Cell(0, 0), SE))
    assert res.status is SolveStatus.UNSOLVABLE


def test_budget_exhaustion():
    config = parse_board("a...\n....\n....\n...b")
    inst = Reconfiguration(
        config,
        Configuration(config.board, {"a": Cell(3, 3), "b": Cell(0, 0)}),
        frozenset(Direction),
    )
    res = solve(inst, budget=3)
    assert res.status is SolveStatus.EXHAUSTED
    assert res.limit == 3


def test_instance_validation():
    config = parse_board("a.")
    with pytest.raises(ValueError):
        Relocation(config, "z", Cell(0, 1), SE)
    with pytest.raises(ValueError):
        Relocation(config, "a", Cell(0, 1), frozenset())
    other = parse_board("b.")
    with pytest.raises(ValueError):
        Reconfiguration(config, other, SE)


# ---------------------------------------------------------------------------
# depth_bound
# ---------------------------------------------------------------------------


def _instance_with(n: int, height: int, width: int, dirs) -> Relocation:
    board_text = "\n".join("." * width for _ in range(height))
    config = parse_board(board_text)
    labels = "abcdefgh"[:n]
    cells = sorted(config.board.open_cells())[:n]
    config = Configuration(config.board, dict(zip(labels, cells)))
    return Relocation(config, "a", sorted(config.board.open_cells())[-1], frozenset(dirs))


def test_depth_bound_two_orthogonal():
    assert depth_bound(_instance_with(3, 4, 5, {Direction.S, Direction.E})) == 27
    assert depth_bound(_instance_with(1, 1, 1, {Direction.S, Direction.E})) == 2


def test_depth_bound_three_directions():
    inst = _instance_with(2, 3, 4, {Direction.W, Direction.S, Direction.E})
    assert depth_bound(inst) == 119
    # Rotation: lone un-opposed direction horizontal, extents swap.
    inst = _instance_with(2, 3, 4, {Direction.N, Direction.S, Direction.E})
    assert depth_bound(inst) == (2 * 4 + 1) * (3 * 3 + 1)


def test_depth_bound_absent_cases():
    assert depth_bound(_instance_with(2, 3, 3, set(Direction))) is None
    assert depth_bound(_instance_with(2, 3, 3, {Direction.E, Direction.W})) is None
    assert depth_bound(_instance_with(2, 3, 3, {Direction.E})) is None


# ---------------------------------------------------------------------------
# Engine cross-check
# ---------------------------------------------------------------------------


def test_engine_step_matches_public_step():
    rng = random.Random(41)
    for _ in range(500):
        config = random_configuration(rng, max_side=7, max_tiles=5, min_tiles=1)
        engine = _Engine(config.board, frozenset(Direction))
        labels = sorted(config.tiles)
        pos = tuple(engine.encode(config.tiles[lb]) for lb in labels)
        d = rng.choice(list(Direction))
        fast = engine.step(pos, d)
        slow = step(config, d)
        assert {lb: engine.decode(p) for lb, p in zip(labels, fast)} == slow.tiles


# ---------------------------------------------------------------------------
# Oracle agreement, verifier closure, certificate bounds
# ---------------------------------------------------------------------------


def test_matches_oracle_pruned_and_unpruned():
    rng = random.Random(43)
    for _ in range(120):
        inst = random_instance(rng)
        expected = oracle_solve(inst)
        for prune in (True, False):
            res = solve(inst, prune=prune)
            if expected is None:
                assert res.status is SolveStatus.UNSOLVABLE, inst
            else:
                assert res.status is SolveStatus.SOLVABLE, inst
                assert len(res.certificate) == expected, inst
                assert verify_certificate(inst, list(res.certificate))


def test_verifier_rejects_bad_certificates():
    inst = Relocation(parse_board("a.."), "a", Cell(0, 2), SE)
    assert not verify_certificate(inst, [Direction.E])
    assert not verify_certificate(inst, [Direction.N, Direction.N])  # outside dirs
    assert verify_certificate(inst, [Direction.E, Direction.E])


def test_two_direction_certificates_respect_bound():
    rng = random.Random(47)
    solvable = 0
    while solvable < 60:
        config = random_configuration(rng, max_side=6, max_tiles=4, min_tiles=1)
        label = rng.choice(sorted(config.tiles))
        goal = rng.choice(sorted(config.board.open_cells()))
        inst = Relocation(config, label, goal, SE)
        res = solve(inst)
        if res.status is SolveStatus.SOLVABLE:
            solvable += 1
            assert len(res.certificate) <= depth_bound(inst)


def test_three_direction_certificates_respect_bound():
    rng = random.Random(53)
    dirs = frozenset({Direction.W, Direction.S, Direction.E})
    solvable = 0
    while solvable < 40:
        config = random_configuration(rng, max_side=6, max_tiles=4, min_tiles=1)
        label = rng.choice(sorted(config.tiles))
        goal = rng.choice(sorted(config.board.open_cells()))
        inst = Relocation(config, label, goal, dirs)
        res = solve(inst)
        if res.status is SolveStatus.SOLVABLE:
            solvable += 1
            assert len(res.certificate) <= depth_bound(inst)


def test_threaded_solve_is_deterministic():
    rng = random.Random(59)
    for _ in range(25):
        inst = random_instance(rng)
        single = solve(inst, threads=1)
        multi = solve(inst, threads=3)
        assert single.status is multi.status
        assert single.certificate == multi.certificate
