"""Regenerate the reconstructed iends37x8 dataset (bundled as gridmender/data/iends37x8.json).

    python tools/make_iends37x8.py [OUT.json]
"""
import json
import sys
from pathlib import Path

D = 12
pcurve = [0.80, 0.82, 0.88, 0.95, 1.00, 0.98, 0.95, 0.97, 0.99, 1.00, 0.98, 0.96]
gcurve = [0.85, 0.95, 1.25, 1.30, 1.10, 1.00, 0.92, 0.88, 0.85, 0.82, 0.80, 0.78]

edges = [("1", "2", True),
         ("2", "3", False), ("3", "4", False), ("2", "23", False), ("23", "24", False),
         ("3", "5", True), ("5", "7", False), ("7", "8", False), ("8", "9", False), ("9", "10", False),
         ("10", "11", False), ("11", "12", False), ("8", "13", False), ("13", "14", False), ("14", "15", False),
         ("15", "16", False),
         ("3", "6", True), ("6", "17", False), ("17", "18", False), ("18", "19", False), ("19", "20", False),
         ("17", "21", False), ("21", "22", False),
         ("24", "25", True), ("25", "26", False), ("26", "27", False), ("27", "28", False),
         ("28", "29", True), ("29", "30", False), ("30", "31", False), ("31", "32", False),
         ("4", "33", True), ("33", "34", False), ("34", "35", False), ("35", "36", False), ("36", "37", False)]
# base active loads (kW); reactive at 0.3 of active
load = {"1": 0, "2": 60, "3": 40, "4": 50, "23": 45, "24": 60,
        "5": 30, "7": 35, "8": 40, "9": 25, "10": 30, "11": 35, "12": 30, "13": 30, "14": 60, "15": 35, "16": 40,
        "6": 50, "17": 45, "18": 40, "19": 60, "20": 50, "21": 45, "22": 40,
        "25": 50, "26": 60, "27": 40, "28": 50,
        "29": 90, "30": 40, "31": 35, "32": 30,
        "33": 70, "34": 35, "35": 40, "36": 45, "37": 30}
dr_pns = {"14", "19", "22", "33"}
pns = []
for i in range(1, 38):
    k = str(i)
    d = {"id": f"pn{k}", "p_demand": load[k], "q_demand": round(0.3 * load[k], 3)}
    if k == "1":
        d.update(substation=True, grid_p_max=5000, grid_q_max=3000)
    if k in dr_pns:
        d["dr"] = True
    pns.append(d)
branches = [{"id": f"b{a}-{b}", "from": f"pn{a}", "to": f"pn{b}", "r": 0.003, "x": 0.002, "s_max": 2000,
             "damaged": dmg} for a, b, dmg in edges]

gas = {"gn1": (0, 0.81, 1.00), "gn2": (220, 0.49, 1.00), "gn3": (150, 0.49, 1.00), "gn4": (250, 0.36, 1.00),
       "gn5": (300, 0.36, 1.00), "gn6": (420, 0.30, 1.00), "gn7": (180, 0.30, 1.00), "gn8": (150, 0.30, 1.00)}
dr_gns = {"gn2", "gn5", "gn7"}
gns = []
for gid, (dem, lo, hi) in gas.items():
    d = {"id": gid, "f_demand": dem, "pi2_min": lo, "pi2_max": hi}
    if gid in dr_gns:
        d["dr"] = True
    gns.append(d)
pipes = [
    {"id": "p1-2", "from": "gn1", "to": "gn2", "kind": "passive", "f_max": 2200, "K": 4e-8},
    {"id": "c2-3", "from": "gn2", "to": "gn3", "kind": "compressor", "f_max": 2000, "ratio_min": 1.05,
     "ratio_max": 1.4, "power_coeff": 0.05, "power_factor": 0.3, "supply_pn": "pn12"},
    {"id": "p3-4", "from": "gn3", "to": "gn4", "kind": "passive", "f_max": 800, "K": 2e-7},
    {"id": "p3-5", "from": "gn3", "to": "gn5", "kind": "passive", "f_max": 1600, "K": 1.2e-7},
    {"id": "p5-6", "from": "gn5", "to": "gn6", "kind": "passive", "f_max": 900, "K": 3e-7},
    {"id": "p5-7", "from": "gn5", "to": "gn7", "kind": "passive", "f_max": 900, "K": 3e-7},
    {"id": "p7-8", "from": "gn7", "to": "gn8", "kind": "passive", "f_max": 900, "K": 3e-7},
]
sources = [{"id": "src1", "node": "gn1", "out_max": 1800}]

gens = [
    {"id": "dfu16", "node": "pn16", "fuel": "diesel",
     "curves": {"diesel": {"points": [[0, 0], [200, 54], [400, 104]]}}, "p_max": 400, "q_max": 200, "s_max": 450,
     "onsite": {"diesel": "tank16"}},
    {"id": "dfu36", "node": "pn36", "fuel": "diesel",
     "curves": {"diesel": {"points": [[0, 0], [150, 40], [300, 78]]}}, "p_max": 300, "q_max": 150, "s_max": 340,
     "onsite": {"diesel": "tank36"}},
    {"id": "ngfu20", "node": "pn20", "fuel": "gas", "gas_node": "gn6",
     "curves": {"gas": {"points": [[0, 0], [150, 48], [300, 93]]}}, "p_max": 300, "q_max": 150, "s_max": 340,
     "onsite": {"gas": "tank20g"}},
    {"id": "dual26", "node": "pn26", "fuel": "dual", "gas_node": "gn4", "max_switches": 3,
     "curves": {"gas": {"points": [[0, 0], [110, 36], [220, 70]]},
                "diesel": {"points": [[0, 0], [150, 40], [300, 78]]}},
     "p_max": {"gas": 220, "diesel": 300}, "q_max": 150, "s_max": 340,
     "onsite": {"gas": "tank26g", "diesel": "tank26d"}},
]
ess = [{"id": "ess30", "node": "pn30", "capacity_kwh": 500, "eff_ch": 0.95, "eff_dch": 0.95, "p_ch_max": 150,
        "p_dch_max": 150, "soc_min": 0.1, "soc_max": 1.0, "soc_initial": 0.9, "q_max": 100, "s_max": 180}]
depots = [
    {"id": "tank16", "fuel": "diesel", "kind": "onsite", "capacity": 500, "initial_fill": 0},
    {"id": "tank36", "fuel": "diesel", "kind": "onsite", "capacity": 400, "initial_fill": 0},
    {"id": "tank26d", "fuel": "diesel", "kind": "onsite", "capacity": 400, "initial_fill": 0},
    {"id": "tank20g", "fuel": "gas", "kind": "onsite", "capacity": 500, "initial_fill": 0},
    {"id": "tank26g", "fuel": "gas", "kind": "onsite", "capacity": 400, "initial_fill": 0},
    {"id": "reservoir", "fuel": "diesel", "kind": "diesel_reservoir", "capacity": 20000, "initial_fill": 20000},
    {"id": "stg8", "fuel": "gas", "kind": "ngds_storage", "capacity": 6000, "initial_fill": 4000,
     "gas_node": "gn8", "supply_pn": "pn37", "eff_inj": 0.95, "eff_wd": 0.95, "inj_max": 600, "wd_max": 600,
     "power_coeff_inj": 0.04, "power_coeff_wd": 0.02, "power_factor": 0.3},
]
mobiles = [
    {"id": "dt1", "kind": "diesel_tanker", "initial_site": "reservoir", "sites": ["reservoir", "tank16", "tank36"],
     "capacity": 300, "initial_fill": 0, "in_max": 300, "out_max": 300},
    {"id": "dt2", "kind": "diesel_tanker", "initial_site": "reservoir", "sites": ["reservoir", "tank26d"],
     "capacity": 250, "initial_fill": 0, "in_max": 250, "out_max": 250},
    {"id": "gt1", "kind": "gas_tanker", "initial_site": "stg8", "sites": ["stg8", "tank20g"], "capacity": 400,
     "initial_fill": 0, "in_max": 400, "out_max": 400},
    {"id": "gt2", "kind": "gas_tanker", "initial_site": "stg8", "sites": ["stg8", "tank26g"], "capacity": 350,
     "initial_fill": 0, "in_max": 350, "out_max": 350},
    {"id": "ru1", "kind": "repair_unit", "initial_site": "ru_base", "sites": ["b1-2", "b3-5", "b3-6"]},
    {"id": "ru2", "kind": "repair_unit", "initial_site": "ru_base", "sites": ["b1-2", "b3-6", "b24-25", "b28-29"]},
    {"id": "ru3", "kind": "repair_unit", "initial_site": "ru_base", "sites": ["b1-2", "b24-25", "b4-33"]},
]
travel = {"default": 1, "overrides": [["reservoir", "tank36", 2], ["reservoir", "tank26d", 2],
                                      ["stg8", "tank26g", 2], ["ru_base", "b28-29", 2], ["ru_base", "b4-33", 2]]}
zones = [
    {"gn": "gn2", "pn": "pn14", "p_base": 24, "f_base": 80, "power_factor": 0.3, "sigma_p": [0.1, 0.3],
     "sigma_n": [0.1, 0.3], "tp": {"max": 4, "du_max": 2, "du_min": 1, "int_min": 1},
     "tn": {"max": 4, "du_max": 2, "du_min": 1, "int_min": 1}, "h_cap": 0.5},
    {"gn": "gn5", "pn": "pn19", "p_base": 24, "f_base": 100, "power_factor": 0.3, "sigma_p": [0.1, 0.3],
     "sigma_n": [0.1, 0.3], "tp": {"max": 4, "du_max": 2, "du_min": 1, "int_min": 1},
     "tn": {"max": 4, "du_max": 2, "du_min": 1, "int_min": 1}, "h_cap": 0.5},
    {"gn": "gn5", "pn": "pn22", "p_base": 16, "f_base": 80, "power_factor": 0.3, "sigma_p": [0.1, 0.3],
     "sigma_n": [0.1, 0.3], "tp": {"max": 4, "du_max": 2, "du_min": 1, "int_min": 1},
     "tn": {"max": 4, "du_max": 2, "du_min": 1, "int_min": 1}, "h_cap": 0.5},
    {"gn": "gn7", "pn": "pn33", "p_base": 28, "f_base": 70, "power_factor": 0.3, "sigma_p": [0.1, 0.3],
     "sigma_n": [0.1, 0.3], "tp": {"max": 4, "du_max": 3, "du_min": 1, "int_min": 1},
     "tn": {"max": 4, "du_max": 3, "du_min": 1, "int_min": 1}, "h_cap": 0.5},
]
repair = {"b1-2": [0, 0.4, 0.7, 1.0], "b3-5": [0, 0.35, 0.7, 1.0], "b3-6": [0, 0.3, 0.6, 1.0],
          "b24-25": [0, 0.25, 0.5, 1.0], "b28-29": [0, 0.5, 0.8, 1.0], "b4-33": [0, 0.2, 0.5, 1.0]}
doc = {"name": "iends37x8",
       "description": ("Reconstructed 37-node power / 8-node gas test system. Structural facts follow the "
                       "published case study (37 PNs, 8 GNs, six damaged branches, 2 DFUs, 1 NGFU on GN6, "
                       "1 dual-fuel unit at PN26/GN4, ESS at PN30, gas storage at GN8, diesel reservoir, "
                       "2+2 tankers, 3 repair units with individual site lists, 1800 Sm3/h source cap, 12 one-hour steps). All numeric "
                       "parameters are reconstructions chosen to reproduce the qualitative behaviour."),
       "time": {"horizon_steps": D, "step_hours": 1.0, "load_curves": {"power": pcurve, "gas": gcurve}},
       "power_nodes": pns, "branches": branches, "gas_nodes": gns, "pipelines": pipes, "sources": sources,
       "generators": gens, "energy_storages": ess, "depots": depots, "mobiles": mobiles, "travel": travel,
       "zones": zones, "repair": repair,
       "weights": {"zeta1": 1, "zeta2": 1, "o1": 0.001, "o2": 0.001, "o3": 0.001, "o4": 0.001}}

if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "src" / "gridmender" / "data" / "iends37x8.json"
    with open(sys.argv[1] if len(sys.argv) > 1 else default, "w") as fh:
        json.dump(doc, fh, indent=1)
