"""Tolerances, findings and the collector shared by the check families."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..scenario import Scenario


@dataclass(frozen=True)
class Tolerances:
    linear_abs: float = 1e-6
    circle_rel: float = 1e-6
    weymouth_rel: float = 1e-2
    ledger_abs: float = 1e-6

    def __post_init__(self):
        for k in ("linear_abs", "circle_rel", "weymouth_rel", "ledger_abs"):
            v = getattr(self, k)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"tolerance {k} must be positive, got {v!r}")

    @classmethod
    def for_scenario(cls, s: Scenario) -> "Tolerances":
        st = s.settings
        return cls(st.linear_abs, st.circle_rel, st.weymouth_rel, st.ledger_abs)


@dataclass(frozen=True, order=True)
class Finding:
    group: str
    family: str
    entity: str
    t: int | None
    residual: float
    limit: float

    def as_dict(self) -> dict:
        return {"group": self.group, "family": self.family, "entity": self.entity, "t": self.t,
                "residual": self.residual, "limit": self.limit}


@dataclass
class Collector:
    """Accumulates findings of one group; ``limit`` is scaled by the size of the compared terms."""

    group: str
    findings: list = field(default_factory=list)

    def equal(self, family, entity, t, lhs, rhs, tol, scale=None):
        resid = abs(lhs - rhs)
        lim = tol * max(1.0, abs(lhs), abs(rhs), scale or 0.0)
        if not resid <= lim:
            self.add(family, entity, t, resid, lim)

    def at_most(self, family, entity, t, value, bound, tol, scale=None):
        excess = value - bound
        lim = tol * max(1.0, abs(value), abs(bound), scale or 0.0)
        if not excess <= lim:
            self.add(family, entity, t, excess, lim)

    def at_least(self, family, entity, t, value, bound, tol, scale=None):
        self.at_most(family, entity, t, bound, value, tol, scale)

    def binary(self, family, entity, t, value):
        if value not in (0.0, 1.0):
            self.add(family, entity, t, min(abs(value), abs(value - 1.0)), 0.0)

    def add(self, family, entity, t, residual, limit):
        ent = entity if isinstance(entity, str) else "/".join(entity)
        self.findings.append(Finding(self.group, family, ent, t, float(residual), float(limit)))
