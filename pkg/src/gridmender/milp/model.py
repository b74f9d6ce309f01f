"""Solver-agnostic sparse MILP container."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

CONTINUOUS = "C"
BINARY = "B"

LE, GE, EQ = "<=", ">=", "="


class ModelError(ValueError):
    pass


@dataclass
class Variable:
    col: int
    name: str
    lower: float
    upper: float
    kind: str = CONTINUOUS

    @property
    def is_binary(self) -> bool:
        return self.kind == BINARY


@dataclass
class LinearConstraint:
    row: int
    name: str
    coefs: list[tuple[int, float]]
    sense: str
    rhs: float


@dataclass
class Solution:
    values: np.ndarray
    objective: float
    status: str  # optimal | feasible | infeasible | unbounded | limit
    nodes: int = 0

    def __getitem__(self, col: int) -> float:
        return float(self.values[col])

    @property
    def usable(self) -> bool:
        return self.status in ("optimal", "feasible", "limit") and self.values is not None


@dataclass
class MilpModel:
    """Variables, rows and a maximisation objective.

    ``registry`` maps ``(family, entity, t)`` keys onto column ids; the
    column name is derived from the key, so names alone are enough to
    decode a solution written by an external solver.
    """

    name: str = "model"
    variables: list[Variable] = field(default_factory=list)
    constraints: list[LinearConstraint] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)
    registry: dict[tuple, int] = field(default_factory=dict)
    sense: str = "max"
    _names: dict[str, int] = field(default_factory=dict, repr=False)
    _row_names: set = field(default_factory=set, repr=False)

    # building -------------------------------------------------------------
    def add_var(self, name: str, lower: float = 0.0, upper: float = math.inf, kind: str = CONTINUOUS,
                key: tuple | None = None) -> int:
        if name in self._names:
            raise ModelError(f"duplicate variable name {name!r}")
        if len(name) > 255 or any(c.isspace() for c in name):
            raise ModelError(f"invalid variable name {name!r}")
        if kind == BINARY:
            lower, upper = max(0.0, lower), min(1.0, upper)
        if lower > upper:
            raise ModelError(f"variable {name}: lower {lower} > upper {upper}")
        col = len(self.variables)
        self.variables.append(Variable(col, name, float(lower), float(upper), kind))
        self._names[name] = col
        if key is not None:
            if key in self.registry:
                raise ModelError(f"duplicate registry key {key!r}")
            self.registry[key] = col
        return col

    def var(self, family: str, entity: tuple | str, t: int | None = None, *, lower: float = 0.0,
            upper: float = math.inf, binary: bool = False) -> int:
        """Declare a registered variable named ``family.entity[.tT]``."""
        ent = (entity,) if isinstance(entity, str) else tuple(entity)
        parts = [family, *ent] + ([f"t{t}"] if t is not None else [])
        return self.add_var(".".join(parts), lower, upper, BINARY if binary else CONTINUOUS, key=(family, ent, t))

    def col(self, family: str, entity: tuple | str, t: int | None = None) -> int:
        ent = (entity,) if isinstance(entity, str) else tuple(entity)
        return self.registry[(family, ent, t)]

    def has(self, family: str, entity: tuple | str, t: int | None = None) -> bool:
        ent = (entity,) if isinstance(entity, str) else tuple(entity)
        return (family, ent, t) in self.registry

    def add_row(self, name: str, terms: Mapping[int, float] | Iterable[tuple[int, float]], sense: str,
                rhs: float) -> int:
        if sense not in (LE, GE, EQ):
            raise ModelError(f"bad sense {sense!r}")
        if name in self._row_names:
            raise ModelError(f"duplicate row name {name!r}")
        acc: dict[int, float] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for c, v in items:
            if not 0 <= c < len(self.variables):
                raise ModelError(f"row {name}: unknown column {c}")
            acc[c] = acc.get(c, 0.0) + float(v)
        coefs = sorted((c, v) for c, v in acc.items() if v != 0.0)
        if any(not math.isfinite(v) for _, v in coefs) or not math.isfinite(rhs):
            raise ModelError(f"row {name}: non-finite data")
        row = len(self.constraints)
        self.constraints.append(LinearConstraint(row, name, coefs, sense, float(rhs)))
        self._row_names.add(name)
        return row

    def add_objective(self, col: int, coef: float) -> None:
        self.objective[col] = self.objective.get(col, 0.0) + float(coef)

    # views ----------------------------------------------------------------
    @property
    def n_cols(self) -> int:
        return len(self.variables)

    @property
    def n_rows(self) -> int:
        return len(self.constraints)

    @property
    def n_binaries(self) -> int:
        return sum(v.is_binary for v in self.variables)

    def column_by_name(self, name: str) -> int:
        return self._names[name]

    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def matrix(self) -> sp.csr_matrix:
        rows, cols, vals = [], [], []
        for c in self.constraints:
            for j, v in c.coefs:
                rows.append(c.row)
                cols.append(j)
                vals.append(v)
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.n_rows, self.n_cols))

    def arrays(self):
        """``(c, A, senses, rhs, lower, upper, is_binary)`` with ``c`` for maximisation."""
        c = np.zeros(self.n_cols)
        for j, v in self.objective.items():
            c[j] = v
        senses = np.array([r.sense for r in self.constraints], dtype=object)
        rhs = np.array([r.rhs for r in self.constraints], dtype=float)
        lo = np.array([v.lower for v in self.variables], dtype=float)
        hi = np.array([v.upper for v in self.variables], dtype=float)
        isbin = np.array([v.is_binary for v in self.variables], dtype=bool)
        return c, self.matrix(), senses, rhs, lo, hi, isbin

    def evaluate(self, x) -> float:
        return float(sum(v * x[j] for j, v in self.objective.items()))

    def violations(self, x, tol: float = 1e-6) -> list[tuple[str, float]]:
        """Rows and bounds violated by point ``x`` (name, amount)."""
        out = []
        for v in self.variables:
            amt = max(v.lower - x[v.col], x[v.col] - v.upper)
            if amt > tol:
                out.append((v.name, amt))
            if v.is_binary and abs(x[v.col] - round(x[v.col])) > tol:
                out.append((v.name, abs(x[v.col] - round(x[v.col]))))
        for r in self.constraints:
            act = sum(a * x[j] for j, a in r.coefs)
            amt = {LE: act - r.rhs, GE: r.rhs - act, EQ: abs(act - r.rhs)}[r.sense]
            if amt > tol * max(1.0, abs(r.rhs)):
                out.append((r.name, amt))
        return out
