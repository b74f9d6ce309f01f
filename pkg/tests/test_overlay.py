import json

import pytest

from conftest import data_path, load_doc, tiny_doc
from gridmender.overlay import OverlayError, apply_patch, load_overlay
from gridmender.scenario import scenario_from_dict


def test_set_field_on_entity():
    doc = load_doc("micro3")
    out = apply_patch(doc, [{"op": "set", "section": "sources", "id": "src1", "field": "out_max", "value": 75}])
    assert out["sources"][0]["out_max"] == 75
    assert doc["sources"][0]["out_max"] == 150


def test_set_on_mapping_section():
    out = apply_patch(load_doc("micro3"), [{"op": "set", "section": "weights", "field": "o1", "value": 0}])
    assert out["weights"]["o1"] == 0


def test_remove_field_and_entity():
    doc = load_doc("micro3")
    out = apply_patch(doc, [{"op": "remove", "section": "branches", "id": "b23", "field": "damaged"},
                            {"op": "remove", "section": "mobiles", "id": "ru1"}])
    assert "damaged" not in out["branches"][1] and out["mobiles"] == []


def test_add_creates_missing_list_section():
    doc = tiny_doc()
    out = apply_patch(doc, [{"op": "add", "section": "energy_storages", "value": {"id": "e1"}}])
    assert out["energy_storages"] == [{"id": "e1"}] and "energy_storages" not in doc


def test_zone_addressed_by_node_pair():
    doc = tiny_doc(zones=[{"gn": "gn1", "pn": "pn2", "h_cap": 1.0}])
    out = apply_patch(doc, [{"op": "set", "section": "zones", "id": "gn1~pn2", "field": "h_cap", "value": 0.4}])
    assert out["zones"][0]["h_cap"] == 0.4


@pytest.mark.parametrize("op,match", [
    ({"op": "rename", "section": "sources"}, "unknown op"),
    ({"op": "set", "section": "nowhere", "field": "a", "value": 1}, "unknown section"),
    ({"op": "set", "section": "sources", "id": "src9", "field": "out_max", "value": 1}, "src9"),
    ({"op": "set", "section": "sources", "id": "src1", "value": 1}, "missing field"),
    ({"op": "add", "section": "weights", "value": {}}, "list sections"),
])
def test_bad_ops_rejected(op, match):
    with pytest.raises(OverlayError, match=match):
        apply_patch(load_doc("micro3"), [op])


def test_load_overlay_errors(tmp_path):
    with pytest.raises(OverlayError):
        load_overlay(tmp_path / "absent.json")
    p = tmp_path / "o.json"
    p.write_text(json.dumps([{"op": "set"}]))
    with pytest.raises(OverlayError, match="patch"):
        load_overlay(p)


def test_bundled_cases_apply_to_reconstructed_dataset():
    base = load_doc("iends37x8")
    one = scenario_from_dict(apply_patch(base, load_overlay(data_path("case1.json"))))
    assert {g.id: g.gas_node for g in one.generators if g.fuel != "diesel"} == {"ngfu20": None, "dual26": None}
    two = scenario_from_dict(apply_patch(base, load_overlay(data_path("case2.json"))))
    assert all(d.initial_fill == d.capacity / 2 for d in two.depots if d.kind == "onsite")
    assert all(g.gas_node is None for g in two.generators)
    three = scenario_from_dict(apply_patch(base, load_overlay(data_path("case3.json"))))
    assert max(three.sources[0].out_max) == 900
