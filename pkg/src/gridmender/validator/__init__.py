"""Independent feasibility oracle for decoded schedules.

Nothing here reads the MILP rows: every check evaluates the original
equations from the scenario data and the decoded values, with the exact
fuel curves, the exact Weymouth relation and exact capacity circles.
"""
from .audit import ValidationReport, audit, recompute_objective
from .base import Finding, Tolerances
from .dr import check_dr, events, window_violations
from .gas import check_gas, weymouth_residual
from .logistics import check_logistics, itinerary_problems, repair_history
from .power import check_power, circle_allowance, fuel_rate

# check family -> MILP constraint families whose intent it re-checks
COVERS = {
    "fuel curve": ("fuel_seg_sum", "fuel_seg_window", "fuel_seg_rate"),
    "dual mode": ("dual_mode",),
    "inactive mode": ("dual_gate",),
    "switch limit": ("dual_switch", "dual_switch_cap"),
    "dual output": ("dual_output",),
    "unit capacity": ("unit_capacity",),
    "state of charge": ("ess_soc",),
    "storage exclusivity": ("ess_mode", "storage_mode"),
    "storage power band": ("ess_gate",),
    "storage output": ("ess_output",),
    "fuel ledger": ("tanker_ledger", "depot_ledger"),
    "transfer while unparked": ("transfer_gate",),
    "transfer band": ("transfer_bound",),
    "unit gas draw": ("unit_draw",),
    "storage rate band": ("storage_gate",),
    "storage net release": ("storage_net",),
    "storage unpowered": ("storage_power_link",),
    "storage power": ("storage_power",),
    "dr at unserved node": ("dr_gate",),
    "dr window: total duration": ("dr_total",),
    "dr window: event too long": ("dr_event_max",),
    "dr window: event too short": ("dr_event_min",),
    "dr window: interval too short": ("dr_interval",),
    "dr band": ("dr_band",),
    "dr reactive": ("dr_reactive",),
    "dr cap": ("dr_hcap",),
    "aggregation mismatch": ("dr_aggregate",),
    "crew abandoned repair": ("repair_abandon",),
    "repair progress": ("repair_count", "repair_eff", "repair_select"),
    "repaired early": ("repair_gate",),
    "repair monotonicity": ("repair_monotone",),
    "mobile state": ("mob_state",),
    "travel time": ("mob_separation", "mob_arrival", "mob_persist"),
    "active balance": ("p_balance",),
    "reactive balance": ("q_balance",),
    "voltage drop": ("v_drop",),
    "branch capacity": ("branch_capacity",),
    "damaged branch flow": ("branch_capacity",),
    "pickup monotonicity": ("pickup_p",),
    "gas balance": ("g_balance",),
    "weymouth residual": ("wey_flow_sign", "wey_press_sign", "wey_tangent", "wey_select", "wey_gap"),
    "compression ratio": ("comp_ratio",),
    "compressor power": ("comp_power",),
    "bypass violated": ("comp_bypass",),
    "compressor power off": ("comp_power_off",),
    "compressor unpowered": ("comp_link",),
    "gas pickup monotonicity": ("pickup_n",),
}

__all__ = [
    "COVERS", "Finding", "Tolerances", "ValidationReport", "audit", "check_dr", "check_gas", "check_logistics",
    "check_power", "circle_allowance", "events", "fuel_rate", "itinerary_problems", "recompute_objective",
    "repair_history", "weymouth_residual", "window_violations",
]
