"""How loose are the linearisations?  Polygon cuts and the Weymouth envelope.

    python walkthroughs/02_linearization_geometry.py
"""
import numpy as np

from gridmender.linearization import polygon_allowance, polygon_cuts, weymouth_envelope

print("polygon sides   worst over-admission")
for n in (4, 8, 12, 32):
    cuts = polygon_cuts(1.0, n)
    theta = np.linspace(0, 2 * np.pi, 20_001)
    u = np.outer(np.cos(theta), [c.alpha for c in cuts]) + np.outer(np.sin(theta), [c.beta for c in cuts])
    radius = np.where(u > 1e-15, 1.0 / np.where(u > 1e-15, u, 1.0), np.inf).min(axis=1)
    print(f"{n:13d}   {radius.max() - 1:.4%}  (bound {polygon_allowance(n):.4%})")

K, f_max = 2e-7, 800.0
env = weymouth_envelope(K, f_max, m=5)
print("\nWeymouth tangents at", np.round(env.tangents, 1))
F = np.linspace(-f_max, f_max, 9)
for f in F:
    d = np.sign(f) * K * f * f
    print(f"  F={f:7.1f}  d={d:.5f}  least gap Y={env.min_gap(f, d):.2e}")
print(f"worst underestimate K (F_max / 11)^2 = {K * (f_max / 11) ** 2:.2e}")
