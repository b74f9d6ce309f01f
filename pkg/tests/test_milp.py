import itertools
import math
import sys
import textwrap

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import same_model
from oracles import brute_force
from gridmender.milp import (
    BINARY,
    EQ,
    GE,
    LE,
    ExternalSolverError,
    Limits,
    MilpModel,
    ModelError,
    SizeGuardError,
    SolutionParseError,
    export_mps,
    parse_solution,
    parse_solution_text,
    read_mps,
    solve_builtin,
    solve_external,
    solve_lp,
    write_solution,
)


def two_binaries():
    m = MilpModel(name="two")
    x = m.add_var("x", 0, 1, BINARY)
    y = m.add_var("y", 0, 1, BINARY)
    m.add_row("cap", {x: 1.0, y: 1.0}, LE, 1.0)
    m.add_objective(x, 1.0)
    m.add_objective(y, 1.0)
    return m


def knapsack():
    w = [12, 7, 11, 8, 9, 6, 14, 5]
    v = [24, 13, 23, 15, 16, 11, 25, 9]
    m = MilpModel(name="knap")
    cols = [m.add_var(f"k{i}", 0, 1, BINARY) for i in range(8)]
    m.add_row("weight", dict(zip(cols, map(float, w))), LE, 30.0)
    for c, val in zip(cols, v):
        m.add_objective(c, float(val))
    best = max(sum(vi for vi, b in zip(v, bits) if b) for bits in itertools.product((0, 1), repeat=8)
               if sum(wi for wi, b in zip(w, bits) if b) <= 30)
    return m, best


# ---- model invariants -----------------------------------------------------

def test_duplicate_name_rejected():
    m = MilpModel()
    m.var("P", "g1", 1)
    with pytest.raises(ModelError):
        m.var("P", "g1", 1)


def test_variable_name_encodes_key():
    m = MilpModel()
    c = m.var("P", "gen14", 3, upper=5)
    assert m.variables[c].name == "P.gen14.t3" and m.col("P", "gen14", 3) == c


def test_bad_bounds_rejected():
    with pytest.raises(ModelError):
        MilpModel().add_var("x", 2, 1)


def test_repeated_column_merged_and_nonfinite_rejected():
    m = MilpModel()
    x = m.add_var("x")
    r = m.add_row("r", [(x, 1.0), (x, 2.0)], LE, 1)
    assert m.constraints[r].coefs == [(x, 3.0)]
    with pytest.raises(ModelError):
        m.add_row("s", {x: math.inf}, LE, 1)


# ---- builtin solver -------------------------------------------------------

def test_two_binaries_objective_one():
    sol = solve_builtin(two_binaries())
    assert sol.status == "optimal" and sol.objective == pytest.approx(1.0)


def test_contradictory_bounds_infeasible():
    m = MilpModel()
    x = m.add_var("x", 0, 10)
    m.add_row("lo", {x: 1.0}, GE, 2.0)
    m.add_row("hi", {x: 1.0}, LE, 1.0)
    m.add_objective(x, 1.0)
    assert solve_builtin(m).status == "infeasible"


def test_unbounded():
    m = MilpModel()
    x = m.add_var("x", 0, math.inf)
    m.add_objective(x, 1.0)
    assert solve_builtin(m).status == "unbounded"


def test_knapsack_matches_enumeration():
    m, best = knapsack()
    sol = solve_builtin(m)
    assert sol.status == "optimal" and sol.objective == pytest.approx(best, abs=1e-6)


def test_size_guard():
    m = MilpModel()
    for i in range(5):
        m.add_var(f"x{i}", 0, 1)
    with pytest.raises(SizeGuardError):
        solve_builtin(m, Limits(size_guard=4))


def test_node_cap_returns_limit():
    m, _ = knapsack()
    sol = solve_builtin(m, Limits(node_cap=1))
    assert sol.status in ("limit", "optimal")


def test_lp_equality_and_free_variable():
    # min x - y  st  x + y = 4, x - y >= -2, y free in [-inf, 3]
    c = np.array([1.0, -1.0])
    A = np.array([[1.0, 1.0], [1.0, -1.0]])
    res = solve_lp(c, A, np.array(["=", ">="], dtype=object), np.array([4.0, -2.0]),
                   np.array([0.0, -math.inf]), np.array([math.inf, 3.0]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-2.0)
    assert res.x == pytest.approx([1.0, 3.0])


@st.composite
def small_milp(draw):
    nb = draw(st.integers(1, 6))
    nc = draw(st.integers(0, 3))
    nr = draw(st.integers(1, 5))
    m = MilpModel(name="rand")
    cols = [m.add_var(f"b{i}", 0, 1, BINARY) for i in range(nb)]
    cols += [m.add_var(f"c{i}", 0, draw(st.sampled_from([1.0, 5.0, 20.0]))) for i in range(nc)]
    coef = st.integers(-5, 5).map(float)
    for r in range(nr):
        terms = {j: draw(coef) for j in cols}
        terms = {j: v for j, v in terms.items() if v}
        if not terms:
            continue
        m.add_row(f"r{r}", terms, draw(st.sampled_from([LE, GE, EQ])) if r else LE, float(draw(st.integers(-3, 8))))
    for j in cols:
        m.add_objective(j, draw(coef))
    return m


@settings(max_examples=80, deadline=None)
@given(small_milp())
def test_builtin_matches_brute_force(m):
    ref, _ = brute_force(m, prune_binary_rows=False)
    sol = solve_builtin(m)
    if ref is None:
        assert sol.status == "infeasible"
    else:
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(ref, abs=1e-6, rel=1e-9)
        assert not m.violations(sol.values)


@settings(max_examples=20, deadline=None)
@given(small_milp())
def test_builtin_is_deterministic(m):
    a, b = solve_builtin(m), solve_builtin(m)
    assert a.status == b.status
    if a.values is not None:
        assert a.values.tobytes() == b.values.tobytes()


# ---- MPS ------------------------------------------------------------------

def test_empty_model_mps(tmp_path):
    p = tmp_path / "e.mps"
    export_mps(MilpModel(name="empty"), p)
    lines = [ln for ln in p.read_text().splitlines() if not ln.startswith("*")]
    assert lines[0].startswith("NAME") and lines[1] == "ROWS" and lines[2].split() == ["N", "OBJ"]
    assert lines[-1] == "ENDATA" and "COLUMNS" not in lines


def test_mps_header_documents_negation(tmp_path):
    p = tmp_path / "h.mps"
    export_mps(two_binaries(), p)
    first = p.read_text().splitlines()[0]
    assert first.startswith("*") and "negat" in first.lower()


def test_two_binary_round_trip(tmp_path):
    m = two_binaries()
    p = tmp_path / "t.mps"
    export_mps(m, p)
    back = read_mps(p)
    same_model(m, back)
    text = p.read_text()
    assert "'INTORG'" in text and "'INTEND'" in text


def test_duplicate_row_name_rejected(tmp_path):
    m = two_binaries()
    m.constraints.append(type(m.constraints[0])(1, "cap", [(0, 1.0)], LE, 1.0))
    with pytest.raises(ModelError):
        export_mps(m, tmp_path / "d.mps")


@settings(max_examples=30, deadline=None)
@given(small_milp())
def test_mps_round_trip_property(m):
    import tempfile
    with tempfile.TemporaryDirectory() as d:
        export_mps(m, f"{d}/m.mps")
        same_model(m, read_mps(f"{d}/m.mps"))


def test_mps_is_byte_stable(tmp_path):
    export_mps(knapsack()[0], tmp_path / "a.mps")
    export_mps(knapsack()[0], tmp_path / "b.mps")
    assert (tmp_path / "a.mps").read_bytes() == (tmp_path / "b.mps").read_bytes()


# ---- solution files -------------------------------------------------------

def test_parse_solution_direct_read():
    sol = parse_solution_text(two_binaries(), "status optimal\nobjective 1\nx 1\ny 0")
    assert sol.status == "optimal" and sol.objective == 1.0 and list(sol.values) == [1.0, 0.0]


def test_empty_solution_defaults():
    m = two_binaries()
    lo = m.add_var("z", 2.5, 9)
    sol = parse_solution_text(m, "")
    assert sol.status == "feasible" and sol.values[0] == 0 and sol.values[lo] == 2.5


def test_unknown_column_named():
    with pytest.raises(SolutionParseError, match="zz"):
        parse_solution_text(two_binaries(), "zz 3")


@pytest.mark.parametrize("text", ["x abc", "status sleepy", "x 1 2"])
def test_bad_solution_lines(text):
    with pytest.raises(SolutionParseError):
        parse_solution_text(two_binaries(), text)


def test_comments_ignored_and_write_read(tmp_path):
    m, _ = knapsack()
    sol = solve_builtin(m)
    p = tmp_path / "k.sol"
    write_solution(m, sol, p)
    back = parse_solution(m, p)
    assert back.status == "optimal" and back.objective == sol.objective
    assert np.array_equal(back.values, sol.values)
    assert parse_solution_text(m, "# header\nstatus optimal # trailing\n").status == "optimal"


# ---- external solver protocol --------------------------------------------

def stub(tmp_path, body):
    script = tmp_path / "stub.py"
    script.write_text(textwrap.dedent(body))
    return f"{sys.executable} {script} {{mps}} {{sol}}"


def test_external_stub_optimum(tmp_path):
    cmd = stub(tmp_path, """
        import sys
        open(sys.argv[2], "w").write("status optimal\\nobjective 1\\nx 1\\ny 0\\n")
    """)
    sol = solve_external(two_binaries(), cmd, tmp_path / "work")
    assert sol.status == "optimal" and sol.objective == 1.0 and list(sol.values) == [1.0, 0.0]


def test_external_nonzero_exit_carries_output(tmp_path):
    cmd = stub(tmp_path, """
        import sys
        print("license expired")
        sys.exit(1)
    """)
    with pytest.raises(ExternalSolverError, match="license expired"):
        solve_external(two_binaries(), cmd)


def test_external_unknown_column(tmp_path):
    cmd = stub(tmp_path, """
        import sys
        open(sys.argv[2], "w").write("status optimal\\nzz 1\\n")
    """)
    with pytest.raises(SolutionParseError, match="zz"):
        solve_external(two_binaries(), cmd)


def test_external_missing_solution(tmp_path):
    cmd = stub(tmp_path, "pass\n")
    with pytest.raises(ExternalSolverError, match="solution file"):
        solve_external(two_binaries(), cmd)


def test_external_template_needs_placeholders():
    with pytest.raises(ValueError):
        solve_external(two_binaries(), "solver model.mps")


def test_external_highs_adapter(tmp_path):
    m, best = knapsack()
    sol = solve_external(m, f"{sys.executable} -m gridmender.adapters.highs {{mps}} {{sol}}")
    assert sol.status == "optimal" and sol.objective == pytest.approx(best)
