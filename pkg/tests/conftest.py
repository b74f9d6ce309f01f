import copy
import json
from importlib import resources

import numpy as np
import pytest

from gridmender.milp import MilpModel
from gridmender.scenario import scenario_from_dict

FIXTURES = ("micro3", "micro5")
ALL_DATASETS = ("micro3", "micro5", "iends37x8")


def data_path(name: str) -> str:
    return str(resources.files("gridmender") / "data" / name)


def load_doc(name: str) -> dict:
    with open(data_path(name if name.endswith(".json") else name + ".json")) as fh:
        return json.load(fh)


def tiny_doc(D: int = 2, **sections) -> dict:
    """One substation feeding one load; extra sections are merged in."""
    doc = {
        "name": "tiny",
        "time": {"horizon_steps": D, "step_hours": 1.0},
        "power_nodes": [
            {"id": "pn1", "substation": True, "grid_p_max": 500, "grid_q_max": 500},
            {"id": "pn2", "p_demand": 100, "q_demand": 20},
        ],
        "branches": [{"id": "b12", "from": "pn1", "to": "pn2", "r": 0.01, "x": 0.02, "s_max": 400}],
    }
    for k, v in sections.items():
        if k in doc and isinstance(doc[k], list):
            doc[k] = doc[k] + list(v)
        else:
            doc[k] = v
    return doc


def tiny(D: int = 2, **sections):
    return scenario_from_dict(tiny_doc(D, **sections))


def rows_ok(m, X):
    """Boolean per candidate row of ``X`` (k x n_cols): every row and bound of ``m`` holds."""
    _, A, senses, rhs, lo, hi, _ = m.arrays()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    act = (A @ X.T).T
    tol = 1e-9
    ok = np.ones(X.shape[0], dtype=bool)
    for sense, test in (("<=", lambda a, r: a <= r + tol), (">=", lambda a, r: a >= r - tol),
                        ("=", lambda a, r: np.abs(a - r) <= tol)):
        sel = senses == sense
        if sel.any():
            ok &= test(act[:, sel], rhs[sel]).all(axis=1)
    ok &= (X >= lo - tol).all(axis=1) & (X <= hi + tol).all(axis=1)
    return ok


@pytest.fixture
def micro3_doc():
    return copy.deepcopy(load_doc("micro3"))


def pin(m, fixes):
    """Copy of ``m`` with columns pinned: ``fixes`` maps (family, entity, t) -> value."""
    m2 = copy.deepcopy(m)
    for (fam, ent, t), v in fixes.items():
        var = m2.variables[m2.col(fam, ent, t)]
        var.lower = var.upper = float(v)
    return m2


def highs(m, fixes=None, objective=None):
    """HiGHS solution of ``m`` (optionally pinned / with a replacement objective), or None if infeasible."""
    from gridmender.adapters.highs import solve_highs

    m2 = pin(m, fixes or {})
    if objective is not None:
        m2.objective = {m2.col(*k): v for k, v in objective.items()}
    sol = solve_highs(m2)
    return sol if sol.status == "optimal" else None


def same_model(a: MilpModel, b: MilpModel):
    assert a.n_cols == b.n_cols and a.n_rows == b.n_rows
    assert a.names() == b.names()
    for va, vb in zip(a.variables, b.variables):
        assert va.is_binary == vb.is_binary
        assert va.lower == vb.lower and va.upper == vb.upper
    assert [(r.name, r.sense) for r in a.constraints] == [(r.name, r.sense) for r in b.constraints]
    assert np.allclose([r.rhs for r in a.constraints], [r.rhs for r in b.constraints], rtol=1e-12, atol=1e-12)
    diff = (a.matrix() - b.matrix()).toarray()
    assert np.all(np.abs(diff) <= 1e-12 * np.maximum(1.0, np.abs(a.matrix().toarray())))
    ca, cb = a.arrays()[0], b.arrays()[0]
    assert np.allclose(ca, cb, rtol=1e-12, atol=1e-12)


# ---- acceptance reporting ----------------------------------------------------
_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")
    config.addinivalue_line("markers", "slow: needs several minutes of external MILP solving")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or (rep.when == "setup" and not rep.passed)):
        return
    entry = _criteria.setdefault(mark.args[0], {"title": mark.args[1], "outcomes": [], "notes": []})
    entry["outcomes"].append(rep.outcome)
    entry["notes"] += [str(v) for k, v in item.user_properties if k == "measured"]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        if "failed" in e["outcomes"]:
            verdict = "FAIL"
        elif all(o == "skipped" for o in e["outcomes"]):
            verdict = "SKIP"
        else:
            verdict = "PASS"
        note = "; ".join(e["notes"])
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {e['title']}" + (f"  [{note}]" if note else ""))
