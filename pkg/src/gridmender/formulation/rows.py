"""Row naming and the registry of constraint families.

Row names look like ``family.entity.tT[.tag]`` so that a violated row in
an exported MPS file can be traced back without the Python objects.
"""
from __future__ import annotations

from ..milp import MilpModel

# constraint family -> short description; the validator maps each of these
# onto one of its own check families (see gridmender.validator.COVERS)
ROW_FAMILIES = {
    "fuel_seg_sum": "one active fuel-curve segment per step",
    "fuel_seg_window": "output lies inside the active segment",
    "fuel_seg_rate": "fuel burnt follows the active segment",
    "dual_mode": "dual-fuel unit runs on exactly one fuel",
    "dual_gate": "output and fuel burn only in the active mode",
    "dual_switch": "switch indicator covers every mode drop",
    "dual_switch_cap": "switch count limit",
    "dual_output": "unit output is the sum of its mode outputs",
    "unit_capacity": "polygonal apparent-power limit of a unit",
    "ess_soc": "state-of-charge recursion",
    "ess_mode": "no simultaneous charge and discharge",
    "ess_gate": "charge/discharge power gated by mode",
    "ess_output": "storage output is discharge minus charge",
    "tanker_ledger": "tanker fuel ledger",
    "depot_ledger": "fixed depot fuel ledger",
    "transfer_gate": "exchange only while parked",
    "transfer_bound": "exchange amount gated by permission",
    "unit_draw": "gas drawn from the NGDS bounded by gas burnt",
    "storage_mode": "no simultaneous injection and withdrawal",
    "storage_gate": "injection/withdrawal gated by mode",
    "storage_net": "net storage release",
    "storage_power_link": "storage operates only when its power node is served",
    "storage_power": "storage electric draw",
    "dr_gate": "demand response only at served nodes",
    "dr_total": "total demand response duration",
    "dr_event_max": "longest single event",
    "dr_event_min": "shortest single event",
    "dr_interval": "shortest gap between events",
    "dr_band": "reduction band",
    "dr_reactive": "reactive reduction follows power factor",
    "dr_hcap": "integrated reduction cap",
    "dr_aggregate": "zone to node aggregation",
    "repair_abandon": "crews stay until the branch is repaired",
    "repair_count": "crew count selector",
    "repair_eff": "repair progress from crew count",
    "repair_select": "one crew-count selector per step",
    "repair_gate": "branch returns only after full repair",
    "repair_monotone": "repaired branches stay repaired",
    "mob_state": "parked at one site or travelling to one",
    "mob_separation": "travel time between parkings",
    "mob_arrival": "parking follows travel or parking at the same site",
    "mob_persist": "travel continues until arrival",
    "p_balance": "nodal active power balance",
    "q_balance": "nodal reactive power balance",
    "v_drop": "voltage drop along branches",
    "branch_capacity": "polygonal branch capacity, zero while damaged",
    "pickup_p": "power pickup is monotone",
    "g_balance": "nodal gas balance",
    "wey_flow_sign": "flow sign follows direction binary",
    "wey_press_sign": "pressure drop sign follows direction binary",
    "wey_tangent": "tangent underestimators of the Weymouth curve",
    "wey_select": "one tangent selected in the active direction",
    "wey_gap": "gap slack above the selected tangent",
    "comp_ratio": "compression ratio window when powered",
    "comp_power": "compressor power follows flow when powered",
    "comp_bypass": "equal pressures when unpowered",
    "comp_power_off": "no power draw when unpowered",
    "comp_link": "compressor needs its supply node served",
    "pickup_n": "gas pickup is monotone",
}


def emit(m: MilpModel, family: str, ent, t: int | None, terms, sense: str, rhs: float, tag: str = "") -> int:
    if family not in ROW_FAMILIES:
        raise KeyError(f"unregistered constraint family {family!r}")
    ent = (ent,) if isinstance(ent, str) else tuple(ent)
    parts = [family, *ent]
    if t is not None:
        parts.append(f"t{t}")
    if tag:
        parts.append(tag)
    return m.add_row(".".join(parts), terms, sense, rhs)


def row_family(name: str) -> str:
    return name.split(".", 1)[0]
