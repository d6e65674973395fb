"""How the geodesic between two fixed points changes with altitude and shape.

Lengths grow roughly like (rho_e + h); the eccentricity series gains a
factor of about e^2 in accuracy per order, visible against the shooting
solution on a fine mesh.

    python demos/altitude_and_eccentricity.py
"""

from isogeod import EllipsoidSurface, GeodeticBoundary, ShootingConfig, solve_inverse
from isogeod import series

boundary = GeodeticBoundary.from_degrees(48.85, 2.35, 40.71, -74.0)
fine = ShootingConfig(n_steps=4000)

print("altitude [km]   length [km]   length / (rho_e + h)")
for h in (-5e3, 0.0, 1e4, 4e5, 3.6e7):
    s = EllipsoidSurface.preset("WGS84", h=h)
    sol = solve_inverse(s, boundary, "shooting", fine)
    print(f"{h / 1e3:13.0f} {sol.length / 1e3:13.3f} {sol.length / s.H:20.9f}")

print()
print("e        series order   relative c3 error vs shooting")
for e in (0.01, 0.08, 0.2):
    s = EllipsoidSurface(6378137.0, e)
    ref = solve_inverse(s, boundary, "shooting", fine).c3
    for order in (0, 2, 4):
        c3 = series.solve_c3(s, boundary, order).c3
        print(f"{e:<8} {order:12d}   {abs(c3 / ref - 1):.2e}")
