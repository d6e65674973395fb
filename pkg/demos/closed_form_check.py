"""Compare both solvers with the elliptic-integral closed form at h = 0.

    python demos/closed_form_check.py
"""

import numpy as np

from isogeod import EllipsoidSurface, GeodeticBoundary, ShootingConfig, solve_inverse
from isogeod.verification import solve_inverse_h0

surface = EllipsoidSurface.preset("WGS84")
rng = np.random.default_rng(42)
print("  phi1    phi2     dlam   series err   shooting err")
for _ in range(8):
    p1, p2 = np.degrees(np.arcsin(rng.uniform(-0.9, 0.9, 2)))
    dl = rng.uniform(20, 160) * rng.choice([-1, 1])
    b = GeodeticBoundary.from_degrees(p1, 0.0, p2, dl)
    _, ref, _, _ = solve_inverse_h0(surface, b)
    ser = solve_inverse(surface, b, "series").length
    sho = solve_inverse(surface, b, "shooting", ShootingConfig(n_steps=2000)).length
    print(f"{p1:6.1f} {p2:7.1f} {dl:8.1f}   {abs(ser / ref - 1):.1e}      {abs(sho / ref - 1):.1e}")
