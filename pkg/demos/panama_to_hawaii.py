"""Panama to Hawaii on the Clarke 1866 ellipsoid, with both solvers.

The route crosses a latitude maximum, so both solvers have to recognize
that the trajectory turns back towards the equator before arriving.

    python demos/panama_to_hawaii.py
"""

import math

from isogeod import EllipsoidSurface, GeodeticBoundary, ShootingConfig, solve_inverse
from isogeod.core import tau_tropic

surface = EllipsoidSurface(6378206.4, 0.08227185417541244347812117)
boundary = GeodeticBoundary.from_degrees(8.973611111, -79.573333333333, 21.435, -158.02583333)

series = solve_inverse(surface, boundary, "series")
print(f"series   c3 = {series.c3:.3f} m, length = {series.length:.3f} m")

for n in (250, 500, 1000, 2000):
    shot = solve_inverse(surface, boundary, "shooting", ShootingConfig(n_steps=n))
    print(f"shooting n={n:5d}: c3 = {shot.c3:.3f} m, length = {shot.length:.3f} m, endpoint error {shot.endpoint_error:.1e}")

# the latitude maximum reached on the way
top = math.degrees(math.asin(tau_tropic(surface, shot.c3)))
print(f"highest latitude on the route: {top:.4f} deg")
print(f"start course {math.degrees(shot.samples[0].kappa):.4f} deg, arrival course {math.degrees(shot.samples[-1].kappa):.4f} deg")
