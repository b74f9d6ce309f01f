import copy
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_DATASETS, data_path, load_doc, tiny, tiny_doc
from gridmender.scenario import (
    DanglingReferenceError,
    DrZone,
    DuplicateZoneError,
    InvariantError,
    ScenarioParseError,
    WindowRules,
    build_incidence,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    validate_topology,
)


def zone(gn, pn):
    rules = WindowRules(2, 2, 0, 0)
    return DrZone(gn, pn, (1.0,), (1.0,), 0.0, (0.0, 0.1), (0.0, 0.1), rules, rules, 1.0)


def test_micro3_counts():
    s = load_scenario(data_path("micro3.json"))
    assert len(s.power_nodes) == 3 and len(s.gas_nodes) == 2
    assert [g.fuel for g in s.generators] == ["diesel"]
    assert validate_topology(s) == []


def test_reconstructed_dataset_structure():
    s = load_scenario(data_path("iends37x8.json"))
    assert len(s.power_nodes) == 37 and len(s.gas_nodes) == 8
    assert len(s.damaged) == 6
    assert s.time.horizon_steps == 12 and s.time.step_hours == 1.0
    fuels = sorted(g.fuel for g in s.generators)
    assert fuels == ["diesel", "diesel", "dual", "gas"]
    dual = next(g for g in s.generators if g.fuel == "dual")
    assert dual.node == "pn26" and dual.gas_node == "gn4"
    ngfu = next(g for g in s.generators if g.fuel == "gas")
    assert ngfu.gas_node == "gn6"
    assert [e.node for e in s.energy_storages] == ["pn30"]
    assert [d.gas_node for d in s.depots if d.kind == "ngds_storage"] == ["gn8"]
    assert any(d.kind == "diesel_reservoir" for d in s.depots)
    kinds = sorted(m.kind for m in s.mobiles)
    assert kinds == ["diesel_tanker"] * 2 + ["gas_tanker"] * 2 + ["repair_unit"] * 3
    assert all(max(src.out_max) == 1800 for src in s.sources)
    assert int(s.incidence.matrix.sum()) == 4
    assert validate_topology(s) == []


def test_dangling_branch_reference_names_node():
    doc = tiny_doc(branches=[{"id": "b29", "from": "pn2", "to": "pn99", "s_max": 10}])
    with pytest.raises(DanglingReferenceError, match="pn99"):
        scenario_from_dict(doc)


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    with pytest.raises(ScenarioParseError):
        load_scenario(p)


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioParseError):
        load_scenario(tmp_path / "absent.json")


@pytest.mark.parametrize("patch,match", [
    (lambda d: d["power_nodes"][1].update(p_demand=-1), "pn2"),
    (lambda d: d["power_nodes"][1].update(v2_min=1.2, v2_max=1.1), "pn2"),
    (lambda d: d["branches"][0].update(to="pn1"), "b12"),
    (lambda d: d["branches"][0].update(s_max=0), "b12"),
    (lambda d: d.update(time={"horizon_steps": 0}), "horizon"),
    (lambda d: d.update(bogus=1), "bogus"),
])
def test_invariant_errors_name_entity(patch, match):
    doc = tiny_doc()
    patch(doc)
    with pytest.raises((InvariantError, ScenarioParseError, ValueError), match=match):
        scenario_from_dict(doc)


def test_sigma_order_checked():
    doc = tiny_doc(gas_nodes=[{"id": "gn1", "f_demand": 10, "pi2_min": 0.5, "pi2_max": 1.0, "dr": True}],
                   sources=[{"id": "s", "node": "gn1", "out_max": 50}])
    doc["power_nodes"][1]["dr"] = True
    doc["zones"] = [{"gn": "gn1", "pn": "pn2", "p_base": 10, "f_base": 5, "sigma_p": [0.5, 0.2]}]
    with pytest.raises(InvariantError, match="gn1~pn2"):
        scenario_from_dict(doc)


def test_incidence_single_zone():
    inc = build_incidence([zone("g1", "p1")], ["g1"], ["p1"])
    assert inc.matrix.tolist() == [[1]]


def test_incidence_sums():
    inc = build_incidence([zone("g1", "p2"), zone("g2", "p2"), zone("g2", "p3")], ["g1", "g2"], ["p1", "p2", "p3"])
    assert inc.matrix.sum(axis=1).tolist() == [1, 2]
    assert inc.matrix.sum(axis=0).tolist() == [0, 2, 1]
    assert inc.row_members("g2") == ["p2", "p3"] and inc.col_members("p2") == ["g1", "g2"]


def test_incidence_duplicate_zone():
    with pytest.raises(DuplicateZoneError):
        build_incidence([zone("g1", "p1"), zone("g1", "p1")], ["g1"], ["p1"])


@settings(max_examples=50, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 4)), max_size=12))
def test_incidence_column_sums_count_zones(pairs):
    gns, pns = [f"g{i}" for i in range(4)], [f"p{j}" for j in range(5)]
    inc = build_incidence([zone(gns[i], pns[j]) for i, j in sorted(pairs)], gns, pns)
    assert int(inc.matrix.sum()) == len(pairs)
    for j, p in enumerate(pns):
        assert inc.matrix[:, j].sum() == sum(1 for _, jj in pairs if jj == j)


def test_cycle_is_non_radial():
    doc = tiny_doc(power_nodes=[{"id": "pn3"}],
                   branches=[{"id": "b23", "from": "pn2", "to": "pn3", "s_max": 10},
                             {"id": "b13", "from": "pn1", "to": "pn3", "s_max": 10}])
    findings = validate_topology(scenario_from_dict(doc))
    assert any("non-radial EPDS" in f for f in findings)


def test_disconnected_gas_network():
    doc = tiny_doc(gas_nodes=[{"id": "gn1", "pi2_min": 0.5, "pi2_max": 1}, {"id": "gn2", "pi2_min": 0.5, "pi2_max": 1}])
    assert "NGDS is not connected" in validate_topology(scenario_from_dict(doc))


def test_zone_base_load_exceeding_demand_names_zone_and_step():
    doc = tiny_doc(2, gas_nodes=[{"id": "gn1", "f_demand": 10, "pi2_min": 0.5, "pi2_max": 1.0, "dr": True}],
                   sources=[{"id": "s", "node": "gn1", "out_max": 50}])
    doc["power_nodes"][1]["dr"] = True
    doc["zones"] = [{"gn": "gn1", "pn": "pn2", "p_base": [50, 150], "f_base": 5, "sigma_p": [0, 0.2]}]
    findings = validate_topology(scenario_from_dict(doc))
    assert findings == ["zone gn1~pn2: power base load exceeds node pn2 demand at TS 2"]


@pytest.mark.parametrize("name", ALL_DATASETS)
def test_save_load_round_trip(name, tmp_path):
    s = load_scenario(data_path(name + ".json"))
    out = tmp_path / "s.json"
    save_scenario(s, out)
    again = load_scenario(out)
    assert scenario_to_dict(again) == scenario_to_dict(s)
    save_scenario(again, tmp_path / "t.json")
    assert (tmp_path / "t.json").read_text() == out.read_text()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.lists(st.floats(0, 1e4, allow_nan=False), min_size=4, max_size=4),
       st.floats(0.1, 1.0), st.integers(1, 3))
def test_round_trip_property(D, demands, weight, tau):
    doc = tiny_doc(D)
    doc["power_nodes"][1].update(p_demand=demands[:D], q_demand=[d / 4 for d in demands[:D]], weight=weight)
    doc["power_nodes"].append({"id": "pn3"})
    doc["branches"].append({"id": "b13", "from": "pn1", "to": "pn3", "s_max": 50, "damaged": True})
    doc["mobiles"] = [{"id": "ru", "kind": "repair_unit", "initial_site": "base"}]
    doc["repair"] = {"b13": [0, 0.5]}
    doc["travel"] = {"default": tau}
    s = scenario_from_dict(doc)
    assert scenario_from_dict(json.loads(json.dumps(scenario_to_dict(s)))) == s


def test_travel_table_symmetric_zero_diagonal():
    s = load_scenario(data_path("iends37x8.json"))
    t = np.array(s.travel.times)
    assert np.array_equal(t, t.T) and not np.diag(t).any() and (t + np.eye(len(t), dtype=int) >= 1).all()


def test_asymmetric_travel_rejected():
    doc = tiny_doc(mobiles=[{"id": "ru", "kind": "repair_unit", "initial_site": "a", "sites": []}])
    doc["travel"] = {"sites": ["a", "b"], "times": [[0, 1], [2, 0]]}
    with pytest.raises(InvariantError, match="asymmetric"):
        scenario_from_dict(doc)


def test_load_curves_scale_scalar_demands():
    doc = tiny_doc(3)
    doc["time"]["load_curves"] = {"power": [0.5, 1.0, 1.5]}
    s = scenario_from_dict(doc)
    assert s.pn("pn2").p_demand == (50.0, 100.0, 150.0)


def test_scenario_is_immutable():
    s = tiny()
    with pytest.raises(Exception):
        s.name = "other"


def test_fixture_documents_are_not_mutated():
    doc = load_doc("micro3")
    before = copy.deepcopy(doc)
    scenario_from_dict(doc)
    assert doc == before
