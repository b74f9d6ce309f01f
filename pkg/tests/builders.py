"""Small scenario documents shared by the formulation and validator tests."""
from conftest import tiny_doc

GAS = dict(gas_nodes=[{"id": "gn1", "pi2_min": 0.9, "pi2_max": 1.0}],
           sources=[{"id": "src", "node": "gn1", "out_max": 500}])


def dfu_doc(D=2, points=((0, 0), (100, 30)), demand=50):
    doc = tiny_doc(D, generators=[{"id": "dfu", "node": "pn2", "fuel": "diesel", "curves": {"diesel": {"points": points}},
                                   "q_max": 50, "s_max": 120, "onsite": {"diesel": "tk"}}],
                   depots=[{"id": "tk", "kind": "onsite", "fuel": "diesel", "capacity": 1000, "initial_fill": 500}])
    doc["power_nodes"][0]["grid_p_max"] = 0
    doc["power_nodes"][1].update(p_demand=demand, q_demand=0)
    return doc


def dual_doc(D, max_switches):
    return tiny_doc(D, **GAS, generators=[{
        "id": "du", "node": "pn2", "fuel": "dual", "max_switches": max_switches, "gas_node": "gn1",
        "curves": {"gas": {"points": [[0, 0], [150, 45]]}, "diesel": {"points": [[0, 0], [150, 40]]}},
        "q_max": 50, "s_max": 160, "onsite": {"diesel": "tk"}}],
        depots=[{"id": "tk", "kind": "onsite", "fuel": "diesel", "capacity": 1000, "initial_fill": 500}])


def tanker_doc(D=3):
    doc = dfu_doc(D)
    doc["depots"] = [{"id": "tk", "kind": "onsite", "fuel": "diesel", "capacity": 200, "initial_fill": 20},
                     {"id": "res", "kind": "diesel_reservoir", "capacity": 5000, "initial_fill": 5000}]
    doc["mobiles"] = [{"id": "dt", "kind": "diesel_tanker", "initial_site": "res", "sites": ["res", "tk"],
                       "capacity": 100, "initial_fill": 0, "in_max": 100, "out_max": 100}]
    doc["travel"] = {"default": 1}
    return doc


def ess_doc(D=2):
    return tiny_doc(D, energy_storages=[{"id": "ess", "node": "pn2", "capacity_kwh": 1000, "eff_ch": 0.95,
                                         "eff_dch": 0.9, "p_ch_max": 200, "p_dch_max": 200, "soc_initial": 0.5,
                                         "q_max": 50, "s_max": 250}])


def dr_doc(D=4, tp=None, sigma_p=(0.0, 0.5), h_cap=2.0):
    doc = tiny_doc(D, gas_nodes=[{"id": "gn1", "pi2_min": 0.9, "pi2_max": 1.0},
                                 {"id": "gn2", "pi2_min": 0.5, "pi2_max": 1.0, "f_demand": 100, "dr": True}],
                   pipelines=[{"id": "p12", "from": "gn1", "to": "gn2", "kind": "passive", "f_max": 300, "K": 1e-6}],
                   sources=[{"id": "src", "node": "gn1", "out_max": 500}])
    doc["power_nodes"][1].update(dr=True, p_demand=100, q_demand=20)
    doc["zones"] = [{"gn": "gn2", "pn": "pn2", "p_base": 100, "f_base": 100, "power_factor": 0.2,
                     "sigma_p": list(sigma_p), "sigma_n": [0.0, 0.5], "tp": tp or {}, "h_cap": h_cap}]
    return doc


def repair_doc(D=4, beta=(0, 0.4, 0.7, 1.0), crews=3, start="b13"):
    doc = tiny_doc(D, power_nodes=[{"id": "pn3", "p_demand": 40, "q_demand": 5}],
                   branches=[{"id": "b13", "from": "pn1", "to": "pn3", "s_max": 200, "damaged": True}])
    doc["mobiles"] = [{"id": f"ru{k}", "kind": "repair_unit", "initial_site": start} for k in range(1, crews + 1)]
    doc["repair"] = {"b13": list(beta)}
    doc["travel"] = {"default": 1}
    return doc


def two_site_doc(D, tau):
    doc = tiny_doc(D, depots=[{"id": "A", "kind": "diesel_reservoir", "capacity": 10},
                              {"id": "B", "kind": "diesel_reservoir", "capacity": 10}])
    doc["mobiles"] = [{"id": "dt", "kind": "diesel_tanker", "initial_site": "A", "sites": ["A", "B"],
                       "capacity": 5, "in_max": 5, "out_max": 5}]
    doc["travel"] = {"default": tau}
    return doc


def compressor_doc():
    doc = tiny_doc(1, gas_nodes=[{"id": "gn1", "pi2_min": 0.6, "pi2_max": 1.0},
                                 {"id": "gn2", "pi2_min": 0.6, "pi2_max": 1.5, "f_demand": 50}],
                   pipelines=[{"id": "c12", "from": "gn1", "to": "gn2", "kind": "compressor", "f_max": 200,
                               "ratio_min": 1.1, "ratio_max": 1.3, "power_coeff": 0.05, "power_factor": 0.3,
                               "supply_pn": "pn2"}],
                   sources=[{"id": "src", "node": "gn1", "out_max": 300}])
    return doc
