"""Single-step tilt model: step semantics, board geometry, the linear-time
occupancy algorithm, complete bounded solvers for relocation and
reconfiguration under restricted direction sets, and compilers from 3SAT to
tilt boards."""

from .grid import (
    Board,
    Cell,
    Configuration,
    Direction,
    GeometryClass,
    apply_sequence,
    classify,
    format_sequence,
    parse_board,
    parse_sequence,
    serialize_board,
    step,
    trace_sequence,
)
from .instances import (
    SCHEMA_VERSION,
    dumps_instance,
    instance_digest,
    instance_from_json,
    instance_to_json,
    load_instance,
    save_instance,
)
from .occupancy import OccupancyQuery, solve_occupancy
from .reconf import (
    FALSE_PAIR,
    RECONF_DIRS,
    TRUE_PAIR,
    ReconfGadget,
    ReconfLayout,
    compile_reconfiguration,
    reconfiguration_layout,
    south_budget,
    staircase_steps,
)
from .reloc import (
    FALSE_WORD,
    TRANSIT_WORD,
    TRUE_WORD,
    Chain,
    Gadget,
    chain_of,
    compile_relocation,
    make_gadget,
    relocation_certificate,
    relocation_layout,
    relocation_sections,
)
from .render import render_ascii, render_svg, write_svg
from .sat import (
    CnfFormula,
    Literal,
    brute_force_sat,
    clause3,
    format_dimacs,
    parse_dimacs,
)
from .search import (
    DEFAULT_BUDGET,
    Occupancy,
    ProblemInstance,
    Reconfiguration,
    Relocation,
    SolveResult,
    SolveStatus,
    depth_bound,
    solve,
    verify_certificate,
)

__all__ = [
    "Board",
    "Cell",
    "Chain",
    "CnfFormula",
    "Configuration",
    "DEFAULT_BUDGET",
    "Direction",
    "FALSE_PAIR",
    "FALSE_WORD",
    "Gadget",
    "GeometryClass",
    "Literal",
    "Occupancy",
    "OccupancyQuery",
    "ProblemInstance",
    "RECONF_DIRS",
    "make_gadget",
    "ReconfGadget",
    "ReconfLayout",
    "Reconfiguration",
    "Relocation",
    "SCHEMA_VERSION",
    "SolveResult",
    "SolveStatus",
    "TRANSIT_WORD",
    "TRUE_PAIR",
    "TRUE_WORD",
    "apply_sequence",
    "brute_force_sat",
    "chain_of",
    "classify",
    "clause3",
    "compile_reconfiguration",
    "compile_relocation",
    "depth_bound",
    "dumps_instance",
    "format_dimacs",
    "format_sequence",
    "instance_digest",
    "instance_from_json",
    "instance_to_json",
    "load_instance",
    "parse_board",
    "parse_dimacs",
    "parse_sequence",
    "reconfiguration_layout",
    "relocation_certificate",
    "relocation_layout",
    "relocation_sections",
    "render_ascii",
    "render_svg",
    "save_instance",
    "serialize_board",
    "solve",
    "solve_occupancy",
    "south_budget",
    "staircase_steps",
    "step",
    "trace_sequence",
    "verify_certificate",
    "write_svg",
]
