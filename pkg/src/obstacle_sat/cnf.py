"""CNF instances, DIMACS text, and model evaluation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class DimacsError(ValueError):
    """Malformed DIMACS or model text; message carries the line number."""


@dataclass
class CnfInstance:
    """Clauses over variables ``1..num_vars`` in generation order.

    Construction drops duplicate literals inside a clause and drops
    tautological clauses; clause order is otherwise preserved.
    ``names`` maps variable ids to readable names (``x{0,1,2}`` ...) and is
    written to DIMACS as ``c var`` comment lines.
    """

    num_vars: int
    clauses: list = field(default_factory=list)
    comments: list = field(default_factory=list)
    names: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        cleaned = []
        for i, clause in enumerate(self.clauses):
            lits = _clean_clause(clause, self.num_vars, i)
            if lits is not None:
                cleaned.append(lits)
        self.clauses = cleaned

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def _clean_clause(clause: Iterable[int], num_vars: int, index: int) -> Optional[tuple]:
    seen, out = set(), []
    for lit in clause:
        if lit == 0 or abs(lit) > num_vars:
            raise ValueError(f"clause #{index}: literal {lit} out of range 1..{num_vars}")
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    if not out:
        raise ValueError(f"clause #{index} is empty")
    return tuple(out)


def write_dimacs(inst: CnfInstance) -> str:
    lines = [f"c {c}" if c else "c" for c in inst.comments]
    for v in sorted(inst.names):
        lines.append(f"c var {v} = {inst.names[v]}")
    lines.append(f"p cnf {inst.num_vars} {len(inst.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in inst.clauses)
    return "\n".join(lines) + "\n"


_VAR_COMMENT = re.compile(r"^var\s+(\d+)\s*=\s*(.+?)\s*$")


def parse_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF; ``c var`` comments are restored into ``names``."""
    comments, names = [], {}
    header = None
    clauses, current = [], []
    cur_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            body = line[1:].strip() if len(line) == 1 or line[1].isspace() else None
            if body is None:
                raise DimacsError(f"line {lineno}: unexpected token {line.split()[0]!r}")
            m = _VAR_COMMENT.match(body)
            if m:
                names[int(m.group(1))] = m.group(2)
            else:
                comments.append(body)
            continue
        if line.startswith("p"):
            if header is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or not parts[2].isdigit() or not parts[3].isdigit():
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if line.startswith("%"):
            break
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: empty clause")
                clauses.append(current)
                current = []
                continue
            if abs(lit) > header[0]:
                raise DimacsError(f"line {lineno}: literal {lit} exceeds declared {header[0]} variables")
            if not current:
                cur_line = lineno
            current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError(f"line {cur_line}: clause not terminated by 0")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfInstance(header[0], clauses, comments, names)


def eval_model(inst: CnfInstance, model: Sequence[bool]) -> tuple:
    """Evaluate a total model.

    ``model[v]`` is the value of variable ``v`` (index 0 unused), so
    ``len(model) == num_vars + 1``. Returns ``(satisfied, first_violated)``.
    """
    if len(model) != inst.num_vars + 1:
        raise ValueError(f"model covers {len(model) - 1} variables, instance has {inst.num_vars}")
    for i, clause in enumerate(inst.clauses):
        if not any(model[lit] if lit > 0 else not model[-lit] for lit in clause):
            return False, i
    return True, None


def model_from_literals(lits: Iterable[int], num_vars: int) -> list:
    """Total model from signed literals; every variable must appear exactly once."""
    model: list = [None] * (num_vars + 1)
    for lit in lits:
        v = abs(lit)
        if v == 0 or v > num_vars:
            raise ValueError(f"literal {lit} out of range 1..{num_vars}")
        if model[v] is not None and model[v] != (lit > 0):
            raise ValueError(f"variable {v} assigned both ways")
        model[v] = lit > 0
    missing = [v for v in range(1, num_vars + 1) if model[v] is None]
    if missing:
        raise ValueError(f"partial model: {len(missing)} variable(s) unassigned, e.g. {missing[0]}")
    model[0] = False
    return model


def parse_model(text: str, num_vars: int, fill_missing: bool = False) -> list:
    """Read a model from ``v`` lines (solver output) or one literal per line.

    Lines starting with ``c`` or ``s`` are ignored. A trailing 0 terminates.
    Variables missing from the text are an error (models must be total)
    unless ``fill_missing`` is set, in which case they default to false.
    """
    lits = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "cs":
            continue
        if line[0] == "v":
            line = line[1:]
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit != 0:
                lits.append(lit)
    if fill_missing:
        given = {abs(lit) for lit in lits}
        lits += [-v for v in range(1, num_vars + 1) if v not in given]
    try:
        return model_from_literals(lits, num_vars)
    except ValueError as exc:
        raise DimacsError(f"model: {exc}") from None


def model_to_literals(model: Sequence[bool]) -> list:
    return [v if model[v] else -v for v in range(1, len(model))]
