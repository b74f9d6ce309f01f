"""Restoration objective: served energy minus small operating penalties."""
from __future__ import annotations

from ..milp import MilpModel
from ..scenario import Scenario


def build_objective(s: Scenario, m: MilpModel) -> None:
    w = s.weights
    dt = s.time.step_hours
    for t in s.time.steps:
        for p in s.power_nodes:
            m.add_objective(m.col("dP", p.id, t), w.zeta1 * p.weight * p.p_demand[t - 1] * dt)
            if p.dr:
                m.add_objective(m.col("PDR", p.id, t), -w.zeta1 * p.weight * dt)
        for g in s.gas_nodes:
            m.add_objective(m.col("dN", g.id, t), w.zeta2 * g.weight * g.f_demand[t - 1] * dt)
            if g.dr:
                m.add_objective(m.col("FDR", g.id, t), -w.zeta2 * g.weight * dt)
        for p in s.pipelines:
            if not p.is_compressor:
                m.add_objective(m.col("Yw", p.id, t), -w.o1)
        for j in s.mobiles:
            for i in j.all_sites:
                m.add_objective(m.col("y", (j.id, i), t), -w.o2)
        for j in s.tankers:
            for i in j.sites:
                m.add_objective(m.col("chi", (j.id, i), t), -w.o3)
        for g in s.generators:
            for fam in ("CN", "CD"):
                if m.has(fam, g.id, t):
                    m.add_objective(m.col(fam, g.id, t), -w.o4)
    # drop exact zeros so the objective only lists live columns
    for col in [c for c, v in m.objective.items() if v == 0.0]:
        del m.objective[col]
