"""Sparse MILP representation, MPS/solution file formats and solver backends."""
from .bnb import Limits, SizeGuardError, solve_builtin
from .external import ExternalSolverError, solve_external
from .model import BINARY, CONTINUOUS, EQ, GE, LE, LinearConstraint, MilpModel, ModelError, Solution, Variable
from .mps import export_mps, read_mps
from .simplex import NumericalError, solve_lp
from .solution import SolutionParseError, parse_solution, parse_solution_text, write_solution

__all__ = [
    "BINARY", "CONTINUOUS", "EQ", "GE", "LE", "Limits", "LinearConstraint", "MilpModel", "ModelError",
    "NumericalError", "SizeGuardError", "Solution", "SolutionParseError", "Variable", "ExternalSolverError",
    "export_mps", "parse_solution", "parse_solution_text", "read_mps", "solve_builtin", "solve_external",
    "solve_lp", "write_solution",
]
