"""Full audit: every check family, objective recomputation and relaxation tightness."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from ..scenario import Scenario
from .base import Finding, Tolerances
from .dr import check_dr
from .gas import check_gas, weymouth_profile
from .logistics import check_logistics
from .power import check_power, circle_excess


def recompute_objective(s: Scenario, sched) -> float:
    """Objective value of a schedule, evaluated term by term from the scenario data."""
    w = s.weights
    dt = s.time.step_hours
    total = 0.0
    for t in range(1, s.time.horizon_steps + 1):
        for p in s.power_nodes:
            served = sched.get("dP", p.id, t) * p.p_demand[t - 1] - (sched.get("PDR", p.id, t) if p.dr else 0.0)
            total += w.zeta1 * p.weight * served * dt
        for g in s.gas_nodes:
            served = sched.get("dN", g.id, t) * g.f_demand[t - 1] - (sched.get("FDR", g.id, t) if g.dr else 0.0)
            total += w.zeta2 * g.weight * served * dt
        total -= w.o1 * sum(sched.get("Yw", p.id, t) for p in s.pipelines if not p.is_compressor)
        total -= w.o2 * sum(sched.get("y", (j.id, i), t) for j in s.mobiles for i in j.all_sites)
        total -= w.o3 * sum(sched.get("chi", (j.id, i), t) for j in s.tankers for i in j.sites)
        total -= w.o4 * sum(sched.get("CN", g.id, t) + sched.get("CD", g.id, t) for g in s.generators)
    return total


@dataclass
class ValidationReport:
    findings: list[Finding]
    weymouth_max: dict[str, float]
    weymouth_slack: float
    objective: float
    solver_objective: float
    objective_ok: bool
    circle: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.findings

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "findings": [f.as_dict() for f in self.findings],
            "relaxation": {"weymouth_max_residual": self.weymouth_max, "weymouth_slack_total": self.weymouth_slack},
            "objective": {"recomputed": self.objective, "solver": self.solver_objective, "match": self.objective_ok},
            "circle_excess": self.circle,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def table(self) -> str:
        lines = [f"validation: {'PASS' if self.passed else 'FAIL'}  ({len(self.findings)} findings)",
                 f"objective: recomputed {self.objective:.6f}, solver {self.solver_objective:.6f}"
                 f" -> {'match' if self.objective_ok else 'MISMATCH'}"]
        for pid, r in self.weymouth_max.items():
            lines.append(f"weymouth {pid}: max residual {r:.3e}")
        lines.append(f"weymouth slack total: {self.weymouth_slack:.6g}")
        if self.findings:
            head = f"{'group':<10} {'family':<32} {'entity':<24} {'t':>4} {'residual':>12} {'limit':>12}"
            lines += [head, "-" * len(head)]
            for f in self.findings:
                t = "-" if f.t is None else str(f.t)
                lines.append(f"{f.group:<10} {f.family:<32} {f.entity:<24} {t:>4} {f.residual:12.4e} {f.limit:12.4e}")
        return "\n".join(lines)


def audit(s: Scenario, sched, sol=None, tol: Tolerances | None = None) -> ValidationReport:
    tol = tol or Tolerances.for_scenario(s)
    findings = check_power(s, sched, tol) + check_gas(s, sched, tol) + check_logistics(s, sched, tol) + \
        check_dr(s, sched, tol)
    obj = recompute_objective(s, sched)
    solver_obj = float(sol.objective) if sol is not None else float(sched.objective)
    limit = 10 * tol.linear_abs * max(1.0, abs(obj))
    ok = math.isfinite(solver_obj) and abs(obj - solver_obj) <= limit
    if not ok:
        findings.append(Finding("objective", "objective mismatch", "model", None,
                                abs(obj - solver_obj) if math.isfinite(solver_obj) else math.inf, limit))
    prof = weymouth_profile(s, sched)
    slack = sum(sched.get("Yw", p.id, t) for p in s.pipelines if not p.is_compressor
                for t in range(1, s.time.horizon_steps + 1))
    return ValidationReport(sorted(findings), {k: max(v) for k, v in prof.items()}, slack, obj, solver_obj, ok,
                            circle_excess(s, sched))
