"""Generator and energy-storage operation."""
from __future__ import annotations

from ..linearization import polygon_cuts
from ..milp import EQ, LE, MilpModel
from ..scenario import Scenario
from .rows import emit


def box_redundant(alpha: float, beta: float, rhs: float, p_rng, q_rng) -> bool:
    """True when ``alpha P + beta Q <= rhs`` holds everywhere on the bound box."""
    top = max(alpha * p_rng[0], alpha * p_rng[1]) + max(beta * q_rng[0], beta * q_rng[1])
    return top <= rhs


def encode_generation_storage(s: Scenario, m: MilpModel) -> None:
    n = s.settings.polygon_sides
    dt = s.time.step_hours
    for g in s.generators:
        cuts = polygon_cuts(g.s_max, n)
        for t in s.time.steps:
            p, q = m.col("P", g.id, t), m.col("Q", g.id, t)
            vp, vq = m.variables[p], m.variables[q]
            for k, c in enumerate(cuts):
                if box_redundant(c.alpha, c.beta, c.rhs, (vp.lower, vp.upper), (vq.lower, vq.upper)):
                    continue
                emit(m, "unit_capacity", g.id, t, {p: c.alpha, q: c.beta}, LE, c.rhs, f"k{k}")
    for e in s.energy_storages:
        cuts = polygon_cuts(e.s_max, n)
        for t in s.time.steps:
            soc, pch, pdch = m.col("soc", e.id, t), m.col("Pch", e.id, t), m.col("Pdch", e.id, t)
            ach, adch = m.col("ach", e.id, t), m.col("adch", e.id, t)
            p, q = m.col("P", e.id, t), m.col("Q", e.id, t)
            terms = {soc: 1.0, pch: -e.eff_ch * dt / e.capacity_kwh, pdch: dt / (e.eff_dch * e.capacity_kwh)}
            if t > 1:
                terms[m.col("soc", e.id, t - 1)] = -1.0
            emit(m, "ess_soc", e.id, t, terms, EQ, e.soc_initial if t == 1 else 0.0)
            emit(m, "ess_mode", e.id, t, {ach: 1.0, adch: 1.0}, LE, 1.0)
            emit(m, "ess_gate", e.id, t, {pch: 1.0, ach: -e.p_ch_max}, LE, 0.0, "ch")
            emit(m, "ess_gate", e.id, t, {pdch: 1.0, adch: -e.p_dch_max}, LE, 0.0, "dch")
            emit(m, "ess_output", e.id, t, {p: 1.0, pdch: -1.0, pch: 1.0}, EQ, 0.0)
            vp, vq = m.variables[p], m.variables[q]
            for k, c in enumerate(cuts):
                if box_redundant(c.alpha, c.beta, c.rhs, (vp.lower, vp.upper), (vq.lower, vq.upper)):
                    continue
                emit(m, "unit_capacity", e.id, t, {p: c.alpha, q: c.beta}, LE, c.rhs, f"k{k}")
