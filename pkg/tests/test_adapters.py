import math

import pytest

from gridmender.adapters.highs import main as highs_main
from gridmender.adapters.highs import solve_highs
from gridmender.milp import BINARY, GE, LE, MilpModel, export_mps, parse_solution


def small():
    m = MilpModel(name="s")
    x = m.add_var("x", 0, 1, BINARY)
    y = m.add_var("y", 0, 4)
    m.add_row("r", {x: 2.0, y: 1.0}, LE, 3.5)
    m.add_objective(x, 3.0)
    m.add_objective(y, 1.0)
    return m


def test_optimal():
    sol = solve_highs(small())
    assert sol.status == "optimal" and sol.objective == pytest.approx(4.5)
    assert list(sol.values) == pytest.approx([1.0, 1.5])


def test_infeasible():
    m = small()
    m.add_row("lo", {1: 1.0}, GE, 5.0)
    sol = solve_highs(m)
    assert sol.status == "infeasible" and sol.values is None and math.isnan(sol.objective)


def test_unbounded():
    m = MilpModel()
    m.add_objective(m.add_var("z", 0, math.inf), 1.0)
    assert solve_highs(m).status == "unbounded"


def test_command_line_adapter(tmp_path):
    m = small()
    export_mps(m, tmp_path / "m.mps")
    assert highs_main([str(tmp_path / "m.mps"), str(tmp_path / "m.sol")]) == 0
    sol = parse_solution(m, tmp_path / "m.sol")
    assert sol.status == "optimal" and sol.objective == pytest.approx(4.5)
