"""Glue between the file protocol of :func:`gridmender.milp.solve_external` and real solvers.

* ``python -m gridmender.adapters.highs MODEL.mps OUT.sol`` solves with the
  HiGHS MILP solver shipped inside SciPy and writes a solution file.
* ``python -m gridmender.adapters.normalize --format F RAW OUT.sol`` turns
  the native solution output of a few common solvers into the same format.
"""
