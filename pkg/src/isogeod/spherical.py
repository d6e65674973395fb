"""Great-circle reference solution for zero eccentricity.

These closed forms seed both inverse solvers and serve as the oracle for
the ``e = 0`` limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError

# below this sin(Z) the great circle through both points is not unique
SIN_Z_MIN = 1e-12


def _unit(phi, lam):
    c = math.cos(phi)
    return np.array([c * math.cos(lam), c * math.sin(lam), math.sin(phi)])


def _cos_sin_Z(boundary):
    u1 = _unit(boundary.phi1, boundary.lam1)
    u2 = _unit(boundary.phi2, boundary.lam2)
    return float(np.dot(u1, u2)), float(np.linalg.norm(np.cross(u1, u2)))


def central_angle(boundary):
    """Angle ``Z`` in ``[0, pi]`` subtended by the two endpoints."""
    cz, sz = _cos_sin_Z(boundary)
    return math.atan2(sz, cz)


@dataclass(frozen=True)
class GreatCircleArc:
    boundary: object
    radius: float

    @property
    def Z(self):
        return central_angle(self.boundary)

    @property
    def length(self):
        return self.radius * self.Z


def great_circle_sample(arc, xi):
    """Point of the arc at parameter ``0 <= xi <= pi/2``.

    Returns
    -------
    (phi, lam, sigma, s)
        Latitude and longitude of the point, the angle ``sigma`` from the
        start and the arc length ``s = radius * sigma``.
    """
    b = arc.boundary
    cz, sz = _cos_sin_Z(b)
    if sz == 0.0 and cz > 0.0:
        raise DegenerateGeometryError("coincident endpoints define no arc")
    cx, sx = math.cos(xi), math.sin(xi)
    d = math.sqrt(1.0 + 2.0 * sx * cx * cz)
    sin_phi = (cx * math.sin(b.phi1) + sx * math.sin(b.phi2)) / d
    phi = math.asin(max(-1.0, min(1.0, sin_phi)))
    c1, c2 = math.cos(b.phi1), math.cos(b.phi2)
    num = cx * c1 * math.sin(b.lam1) + sx * c2 * math.sin(b.lam2)
    den = cx * c1 * math.cos(b.lam1) + sx * c2 * math.cos(b.lam2)
    lam = b.lam1 + math.remainder(math.atan2(num, den) - b.lam1, 2.0 * math.pi)
    sigma = math.atan2(sx * sz, sx * cz + cx)
    return phi, lam, sigma, arc.radius * sigma


def c3_sphere(boundary, radius):
    """Launching parameter of the great circle through both endpoints.

    Raises
    ------
    DegenerateGeometryError
        For coincident or antipodal endpoints.
    """
    _, sz = _cos_sin_Z(boundary)
    if sz < SIN_Z_MIN:
        raise DegenerateGeometryError("coincident or antipodal endpoints; great circle not unique")
    return radius * math.cos(boundary.phi1) * math.cos(boundary.phi2) * math.sin(boundary.dlam) / sz


def initial_north_sign(boundary):
    """Sign of dtau/ds at the start of the great circle (0 maps to +1)."""
    cz, _ = _cos_sin_Z(boundary)
    d = math.sin(boundary.phi2) - math.sin(boundary.phi1) * cz
    return -1 if d < 0.0 else 1


def final_north_sign(boundary):
    """Sign of dtau/ds on arrival at the end point of the great circle."""
    return -initial_north_sign(boundary.reversed())
