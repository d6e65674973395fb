import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from isogeod import EllipsoidSurface, GeodeticBoundary
from isogeod.spherical import c3_sphere, central_angle

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_boundaries(rng, n):
    """Boundaries with uniform endpoints on the sphere, seeded.

    Rejected as degenerate: central angle within 0.1 rad of 0 or pi
    (nearly coincident or antipodal) and ``|c3|/H < 0.1`` on the sphere
    (routes passing close to a pole or running along a meridian).
    """
    out = []
    while len(out) < n:
        p1, p2 = np.arcsin(rng.uniform(-1.0, 1.0, 2))
        l2 = rng.uniform(-math.pi, math.pi)
        b = GeodeticBoundary(float(p1), 0.0, float(p2), float(l2))
        Z = central_angle(b)
        if not 0.1 <= Z <= math.pi - 0.1:
            continue
        if abs(c3_sphere(b, 1.0)) < 0.1:
            continue
        out.append(b)
    return out


def _basis_fd(surface, phi, lam, d=1e-5):
    def e(phi, lam):
        return surface.topocentric_basis(math.sin(phi), lam)

    # derivatives of the basis vectors along phi and lambda
    dphi = [(a - b) / (2 * d) for a, b in zip(e(phi + d, lam), e(phi - d, lam))]
    dlam = [(a - b) / (2 * d) for a, b in zip(e(phi, lam + d), e(phi, lam - d))]
    return e(phi, lam), dphi, dlam


def christoffel_fd(surface, phi, lam=0.4):
    (e_l, e_p), (de_l_dp, de_p_dp), (de_l_dl, _) = _basis_fd(surface, phi, lam)
    E, G = e_l @ e_l, e_p @ e_p
    return (de_l_dl @ e_p / G, de_l_dp @ e_l / E, de_p_dp @ e_p / G)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])


@pytest.fixture
def wgs84():
    return EllipsoidSurface.preset("WGS84")


@pytest.fixture
def panama_hawaii():
    surface = EllipsoidSurface(6378206.4, 0.08227185417541244347812117)
    boundary = GeodeticBoundary.from_degrees(8.973611111, -79.573333333333, 21.435, -158.02583333)
    return surface, boundary


@pytest.fixture
def paris_saigon():
    # angles given in gon
    surface = EllipsoidSurface(637838.799919243, 0.0815815883368028)
    boundary = GeodeticBoundary(*(math.radians(0.9 * a) for a in (54.262654, 0.0, 11.977469, 115.959876)))
    return surface, boundary
