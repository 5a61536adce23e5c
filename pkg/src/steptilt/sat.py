"""3SAT formula model, DIMACS ingestion, and a brute-force satisfiability
oracle used to verify the hardness-reduction compilers.

Clauses are normalized to exactly three literals; short DIMACS clauses are
padded by repeating their last literal, which leaves satisfiability
unchanged and matches the repeated-literal clauses the reductions accept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

MAX_BRUTE_FORCE_VARS = 24

Literal = tuple[int, bool]  # (variable index 1..N, polarity: True = positive)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("formula must have at least one variable")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError("every clause must have exactly 3 literals")
            for var, _pol in clause:
                if not 1 <= var <= self.num_vars:
                    raise ValueError(f"literal index {var} out of range 1..{self.num_vars}")

    def evaluate(self, assignment: dict[int, bool]) -> bool:
        return all(
            any(assignment[var] == pol for var, pol in clause)
            for clause in self.clauses
        )


def clause3(*literals: Literal) -> tuple[Literal, Literal, Literal]:
    """Normalize 1 to 3 literals to an exactly-3 clause by repeating the
    last literal."""
    lits = list(literals)
    if not lits:
        raise ValueError("empty clause")
    if len(lits) > 3:
        raise ValueError("clause has more than 3 literals")
    while len(lits) < 3:
        lits.append(lits[-1])
    return (lits[0], lits[1], lits[2])


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF. Clauses with fewer than 3 literals are padded by
    repeating the last literal; more than 3 are rejected."""
    num_vars: int | None = None
    clauses: list[tuple[Literal, Literal, Literal]] = []
    pending: list[Literal] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ValueError(f"malformed problem line: {line!r}")
            num_vars = int(fields[2])
            continue
        for token in line.split():
            value = int(token)
            if value == 0:
                clauses.append(clause3(*pending))
                pending = []
            else:
                pending.append((abs(value), value > 0))
    if pending:
        clauses.append(clause3(*pending))
    if num_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    return CnfFormula(num_vars, tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for clause in f.clauses:
        lines.append(" ".join(str(var if pol else -var) for var, pol in clause) + " 0")
    return "\n".join(lines) + "\n"


def brute_force_sat(f: CnfFormula) -> dict[int, bool] | None:
    """Exhaustively search for a satisfying assignment (N <= 24)."""
    if f.num_vars > MAX_BRUTE_FORCE_VARS:
        raise ValueError(f"too many variables for brute force ({f.num_vars} > {MAX_BRUTE_FORCE_VARS})")
    for bits in product((False, True), repeat=f.num_vars):
        assignment = {i + 1: bits[i] for i in range(f.num_vars)}
        if f.evaluate(assignment):
            return assignment
    return None
