"""Tests for the reconfiguration compiler.

Oracle provenance: structural constants (staircase step counts, seed
columns, forcer tile counts) are asserted directly; dynamic behaviors
(mouth drops, the wall trap, gate strand, window enforcement) are frozen
from step-engine simulations; end-to-end soundness is checked against the
brute-force satisfiability oracle with the breadth-first solver as the
decision procedure.
"""

import itertools

import pytest

from steptilt.grid import (
    Cell,
    Direction,
    GeometryClass,
    apply_sequence,
    classify,
    parse_sequence,
)
from steptilt.reconf import (
    RECONF_DIRS,
    FALSE_PAIR,
    TRUE_PAIR,
    compile_reconfiguration,
    corridor_length,
    gadget_manifest,
    make_clause_gadget,
    make_south_forcer,
    make_south_limiter,
    reconfiguration_layout,
    south_budget,
    staircase_steps,
)
from steptilt.sat import CnfFormula, brute_force_sat, clause3
from steptilt.search import SolveStatus, solve, verify_certificate

F_X1 = CnfFormula(1, (clause3((1, True)),))
F_NOT_X1 = CnfFormula(1, (clause3((1, False)),))
F_CONTRA = CnfFormula(1, (clause3((1, True)), clause3((1, False))))


def test_assignment_pairs():
    assert TRUE_PAIR == (Direction.S, Direction.E)
    assert FALSE_PAIR == (Direction.E, Direction.S)
    assert RECONF_DIRS == frozenset({Direction.S, Direction.E})


def test_staircase_step_counts():
    assert staircase_steps(1) == 2
    assert staircase_steps(3) == 8
    assert [staircase_steps(m) for m in (1, 2, 3, 4)] == [2, 5, 8, 11]


def test_clause_seed_columns():
    # (x1 or not-x2 or x3) over five variables: columns 1, 5, 11.
    gadget = make_clause_gadget(1, 5, ((1, True), (2, False), (3, True)))
    literal_cols = sorted(
        cell.col for label, cell in gadget.seed_tiles if label.startswith("c1t")
    )
    assert literal_cols == [1, 5, 11]


def test_clause_gadget_has_three_notches_and_gate():
    gadget = make_clause_gadget(2, 2, ((1, True), (1, True), (2, False)))
    labels = [label for label, _ in gadget.seed_tiles]
    assert labels == ["c2t1", "c2t2", "c2t3", "g2"]
    goals = dict(gadget.goal_tiles)
    notch_cols = sorted(goals[f"c2t{j}"].col for j in (1, 2, 3))
    # Notches two columns apart; reverse order: westmost seed, eastmost notch.
    assert notch_cols[1] - notch_cols[0] == 2 and notch_cols[2] - notch_cols[1] == 2
    seeds = dict(gadget.seed_tiles)
    assert seeds["c2t1"].col < seeds["c2t2"].col < seeds["c2t3"].col
    assert goals["c2t1"].col > goals["c2t2"].col > goals["c2t3"].col


def test_repeated_literals_ride_east_of_mouths():
    n = 2
    gadget = make_clause_gadget(1, n, ((1, True), (1, True), (1, True)))
    seeds = dict(gadget.seed_tiles)
    assert seeds["c1t1"].col == 1  # the one real positive literal
    assert {seeds["c1t2"].col, seeds["c1t3"].col} == {10 * n - 8, 10 * n - 7}


def test_clause_gadget_rejects_bad_input():
    with pytest.raises(ValueError):
        make_clause_gadget(0, 1, ((1, True),) * 3)
    with pytest.raises(ValueError):
        make_clause_gadget(1, 1, ((2, True),) * 3)


def test_forcer_two_tiles_per_variable():
    forcer = make_south_forcer(3)
    assert len(forcer.seed_tiles) == 6
    rows = {}
    for label, cell in forcer.seed_tiles:
        rows.setdefault(cell.row, []).append(cell.col)
    assert all(sorted(cols) == [0, 1] for cols in rows.values())
    goals = dict(forcer.goal_tiles)
    for k in (1, 2, 3):
        # Goals sit east of row k's pit, preserving the pair's order.
        assert goals[f"f{k}a"].col == forcer.width - 2
        assert goals[f"f{k}b"].col == forcer.width - 1


def test_limiter_admits_exactly_budget_souths():
    limiter = make_south_limiter(1)
    seed = dict(limiter.seed_tiles)["L"]
    goal = dict(limiter.goal_tiles)["L"]
    assert seed == Cell(1, 0)
    # Default budget n+1: one south step leaves the tile just above its goal.
    assert goal == Cell(3, 0)
    # Overshoot room below the goal makes an extra south step fatal.
    assert Cell(goal.row + 1, goal.col) in limiter.cells
    deep = make_south_limiter(2, budget=9)
    assert dict(deep.goal_tiles)["L"] == Cell(10, 0)


def test_layout_rooms_and_origins():
    layout = reconfiguration_layout(F_CONTRA)
    assert len(layout.clause_gadgets) == 2
    assert len(layout.origins) == 4  # two clause rooms, forcer, limiter
    assert all(origin.col == 2 for origin in layout.origins)
    assert layout.south_forcer.kind == "SouthForcer"
    assert layout.south_limiter.kind == "SouthLimiter"
    assert set(layout.start.tiles) == set(layout.target.tiles)


def test_compiled_board_is_connected():
    for f in (F_X1, F_CONTRA):
        inst = compile_reconfiguration(f)
        assert classify(inst.config.board).at_least(GeometryClass.CONNECTED)
        assert inst.dirs == RECONF_DIRS


def test_true_pair_drops_positive_tile_into_mouth():
    layout = reconfiguration_layout(F_X1)
    origin = layout.origins[0]
    after = apply_sequence(layout.start, list(TRUE_PAIR))
    # Mouth of variable 1 sits at room column 1; the tile rests in the slit.
    assert after.tiles["c1t1"] == Cell(origin.row + 2, origin.col + 1)


def test_false_pair_drops_negative_tile_into_mouth():
    layout = reconfiguration_layout(F_NOT_X1)
    origin = layout.origins[0]
    after = apply_sequence(layout.start, list(FALSE_PAIR))
    assert after.tiles["c1t1"] == Cell(origin.row + 2, origin.col + 1)


def test_wrong_polarity_stays_on_corridor():
    layout = reconfiguration_layout(F_X1)
    origin = layout.origins[0]
    after = apply_sequence(layout.start, list(FALSE_PAIR))
    assert after.tiles["c1t1"] == Cell(origin.row + 1, origin.col + 2)


def test_all_miss_traps_westmost_tile():
    # Assign x1 false: every tile of (x1 or x1 or x1) rides to the wall and
    # the first wall-phase south step drops the westmost into the trap.
    layout = reconfiguration_layout(F_X1)
    origin = layout.origins[0]
    t = corridor_length(1)
    seq = parse_sequence("ES" + "E" * (t - 4) + "S")
    end = apply_sequence(layout.start, seq)
    trap = Cell(origin.row + 2, origin.col + t - 3)
    assert end.tiles["c1t1"] == trap
    board = layout.start.board
    assert not board.is_open(Cell(trap.row + 1, trap.col))
    assert not board.is_open(Cell(trap.row, trap.col + 1))


def test_mid_interval_south_strands_gate_tile():
    # A south signal between the assignment windows and wall packing drops
    # the gate tile into its sealed well, from which the goal is unreachable.
    layout = reconfiguration_layout(F_X1)
    end = apply_sequence(layout.start, parse_sequence("SEEEEES"))
    gate = end.tiles["g1"]
    goal = layout.target.tiles["g1"]
    assert gate.row == goal.row and gate.col < goal.col
    board = layout.start.board
    assert not board.is_open(Cell(gate.row + 1, gate.col))


def test_second_window_south_drops_forcer_pair_into_well():
    layout = reconfiguration_layout(F_X1)
    origin = layout.origins[1]
    end = apply_sequence(layout.start, parse_sequence("SES"))
    assert end.tiles["f1a"] == Cell(origin.row + 3, origin.col + 1)
    assert end.tiles["f1b"] == Cell(origin.row + 3, origin.col + 2)
    board = layout.start.board
    for label in ("f1a", "f1b"):
        cell = end.tiles[label]
        assert not board.is_open(Cell(cell.row + 1, cell.col))


def test_south_budget_grows_with_formula():
    assert south_budget(F_X1) < south_budget(F_CONTRA)
    layout = reconfiguration_layout(F_X1)
    goal = dict(layout.south_limiter.goal_tiles)["L"]
    assert goal.row == 1 + south_budget(F_X1)


def test_satisfiable_formula_solves_and_verifies():
    inst = compile_reconfiguration(F_X1)
    res = solve(inst, budget=1_000_000)
    assert res.status == SolveStatus.SOLVABLE
    assert verify_certificate(inst, list(res.certificate))
    souths = sum(1 for d in res.certificate if d == Direction.S)
    assert souths == south_budget(F_X1)


def test_contradiction_is_unsolvable():
    inst = compile_reconfiguration(F_CONTRA)
    res = solve(inst, budget=1_000_000)
    assert res.status == SolveStatus.UNSOLVABLE


@pytest.mark.parametrize(
    "combo", list(itertools.combinations_with_replacement([(1, True), (1, False)], 3))
)
def test_single_clause_equivalence_one_variable(combo):
    f = CnfFormula(1, (clause3(*combo),))
    want = brute_force_sat(f) is not None
    res = solve(compile_reconfiguration(f), budget=1_000_000)
    assert (res.status == SolveStatus.SOLVABLE) == want


def test_manifest_covers_all_rooms():
    manifest = gadget_manifest()
    assert set(manifest) == {"Clause", "SouthForcer", "SouthLimiter"}
    for entry in manifest.values():
        assert "footprint" in entry
