"""Decoded per-step values of every decision family."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..milp import MilpModel, Solution
from ..scenario import Scenario

BINARY_TOL = 1e-4


class DecodeError(ValueError):
    pass


@dataclass
class Schedule:
    """``values[family][entity]`` is an array over steps 1..D (index 0 is step 1)."""

    horizon: int
    values: dict[str, dict[tuple, np.ndarray]] = field(default_factory=dict)
    binaries: frozenset = frozenset()
    objective: float = float("nan")
    status: str = "feasible"

    def get(self, family: str, entity, t: int | None = None, default: float = 0.0):
        ent = (entity,) if isinstance(entity, str) else tuple(entity)
        arr = self.values.get(family, {}).get(ent)
        if arr is None:
            return default if t is not None else np.full(self.horizon, default)
        return float(arr[t - 1]) if t is not None else arr

    def has(self, family: str, entity) -> bool:
        ent = (entity,) if isinstance(entity, str) else tuple(entity)
        return ent in self.values.get(family, {})

    def entities(self, family: str) -> list[tuple]:
        return list(self.values.get(family, {}))

    def copy(self) -> "Schedule":
        vals = {f: {e: a.copy() for e, a in d.items()} for f, d in self.values.items()}
        return Schedule(self.horizon, vals, self.binaries, self.objective, self.status)

    def set(self, family: str, entity, t: int, value: float) -> None:
        ent = (entity,) if isinstance(entity, str) else tuple(entity)
        self.values[family][ent][t - 1] = value


def supplied_energy(s: Scenario, sched: Schedule) -> tuple[np.ndarray, np.ndarray]:
    """Per-step weighted served power and gas energy (objective terms i and ii, without zeta)."""
    dt = s.time.step_hours
    D = s.time.horizon_steps
    pw, gs = np.zeros(D), np.zeros(D)
    for t in range(1, D + 1):
        for p in s.power_nodes:
            served = sched.get("dP", p.id, t) * p.p_demand[t - 1]
            if p.dr:
                served -= sched.get("PDR", p.id, t)
            pw[t - 1] += p.weight * served * dt
        for g in s.gas_nodes:
            served = sched.get("dN", g.id, t) * g.f_demand[t - 1]
            if g.dr:
                served -= sched.get("FDR", g.id, t)
            gs[t - 1] += g.weight * served * dt
    return pw, gs


def decode(s: Scenario, m: MilpModel, sol: Solution) -> Schedule:
    if sol.values is None or sol.status not in ("optimal", "feasible", "limit"):
        raise DecodeError(f"cannot decode a solution with status {sol.status!r}")
    D = s.time.horizon_steps
    x = np.asarray(sol.values, dtype=float)
    if x.shape != (m.n_cols,):
        raise DecodeError(f"solution has {x.shape[0]} values, model has {m.n_cols} columns")
    used = np.zeros(m.n_cols, dtype=bool)
    values: dict[str, dict[tuple, np.ndarray]] = {}
    bins = set()
    for (family, ent, t), col in m.registry.items():
        v = x[col]
        if m.variables[col].is_binary:
            r = round(v)
            if abs(v - r) > BINARY_TOL or r not in (0, 1):
                raise DecodeError(f"binary {m.variables[col].name} = {v!r} is not 0/1 within {BINARY_TOL}")
            v = float(r)
            bins.add(family)
        arr = values.setdefault(family, {}).setdefault(ent, np.zeros(D))
        arr[t - 1] = v
        used[col] = True
    if not used.all():
        orphan = m.variables[int(np.flatnonzero(~used)[0])].name
        raise DecodeError(f"column {orphan} is not in the registry")
    return Schedule(D, values, frozenset(bins), float(sol.objective), sol.status)
