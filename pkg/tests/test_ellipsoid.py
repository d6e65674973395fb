import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from isogeod import DomainError, EllipsoidSurface, GeodeticBoundary
from isogeod.ellipsoid import (
    PRESETS,
    eccentricity_flattening_convert,
    latitude_difference_coefficients,
    latitude_difference_exact,
    latitude_difference_v,
)

ARCSEC = 180.0 * 3600.0 / math.pi


def test_wgs84_eccentricity():
    s = EllipsoidSurface.preset("WGS84")
    assert s.e == pytest.approx(0.0818191908426215, rel=1e-14)
    assert 1.0 / s.f == pytest.approx(298.257223563, rel=1e-13)
    assert s.rho_p == pytest.approx(6356752.314245, rel=1e-12)


@given(st.floats(0.0, 0.99))
def test_flattening_round_trip(f):
    e = eccentricity_flattening_convert(f)
    assert eccentricity_flattening_convert(e, "flattening") == pytest.approx(f, rel=1e-12, abs=1e-300)
    assert e * e == pytest.approx(f * (2.0 - f), rel=1e-12, abs=1e-300)


def test_convert_rejects_out_of_range():
    with pytest.raises(DomainError):
        eccentricity_flattening_convert(1.0)
    with pytest.raises(DomainError):
        eccentricity_flattening_convert(-0.1)
    with pytest.raises(ValueError):
        eccentricity_flattening_convert(0.1, to="bogus")


@pytest.mark.parametrize("kw", [dict(rho_e=0.0, e=0.1), dict(rho_e=1.0, e=1.0), dict(rho_e=1.0, e=0.1, h=-1.0)])
def test_surface_validation(kw):
    with pytest.raises(DomainError):
        EllipsoidSurface(**kw)


def test_fourier_coefficients_match_quadrature(wgs84):
    # project the exact v(phi) on sin(2 k phi)
    coeffs = latitude_difference_coefficients(wgs84.e, 3)
    for k, c in enumerate(coeffs, start=1):
        val, _ = quad(lambda p: latitude_difference_exact(p, wgs84.e) * math.sin(2 * k * p), 0.0, math.pi, epsabs=1e-17)
        assert c == pytest.approx(2.0 * val / math.pi, rel=1e-9, abs=1e-16)


def test_published_coefficients_need_rounded_flattening():
    # the printed arcsecond values are reproduced by 1/f = 298.257
    e = eccentricity_flattening_convert(1.0 / 298.257)
    got = latitude_difference_coefficients(e, 3) * ARCSEC
    np.testing.assert_allclose(got, [692.72669, -1.16324, 0.00260], atol=5e-5)


@given(st.floats(-1.5, 1.5))
def test_v_series_close_to_exact(phi):
    s = EllipsoidSurface.preset()
    # truncation error is bounded by the first omitted term m^4/4
    bound = 1.01 * s.m**4 / 4.0
    assert latitude_difference_v(phi, s.e, 3) == pytest.approx(float(latitude_difference_exact(phi, s.e)), abs=bound)


def test_v_series_vectorized():
    phi = np.linspace(-1, 1, 7)
    v = latitude_difference_v(phi, 0.08, 3)
    assert v.shape == (7,)
    assert v[3] == 0.0


def test_radii_against_differentiation(wgs84):
    # M = d(arc)/dphi along the meridian, from the Cartesian curve
    for phi in (-1.2, -0.3, 0.0, 0.7, 1.4):
        d = 1e-6
        p0 = wgs84.to_cartesian(math.sin(phi - d), 0.0)
        p1 = wgs84.to_cartesian(math.sin(phi + d), 0.0)
        assert np.linalg.norm(p1 - p0) / (2 * d) == pytest.approx(float(wgs84.radius_M(math.sin(phi))), rel=1e-9)


def test_curvature_derivatives_fd(wgs84):
    for tau in (-0.9, -0.2, 0.3, 0.95):
        d = 1e-6
        dN, dM, d2M = wgs84.curvature_derivatives(tau)
        assert dN == pytest.approx((wgs84.radius_N(tau + d) - wgs84.radius_N(tau - d)) / (2 * d), rel=1e-7, abs=1e-6)
        assert dM == pytest.approx((wgs84.radius_M(tau + d) - wgs84.radius_M(tau - d)) / (2 * d), rel=1e-7, abs=1e-6)
        fd2 = (wgs84.curvature_derivatives(tau + d)[1] - wgs84.curvature_derivatives(tau - d)[1]) / (2 * d)
        assert d2M == pytest.approx(fd2, rel=1e-6)


@given(st.floats(-1.5, 1.5), st.floats(-3.1, 3.1), st.floats(-5e3, 1e6))
def test_cartesian_round_trip(phi, lam, h):
    s = EllipsoidSurface.preset("WGS84", h=h)
    p, l, hh = s.from_cartesian(s.to_cartesian(math.sin(phi), lam))
    assert p == pytest.approx(phi, abs=1e-11)
    assert hh == pytest.approx(h, abs=1e-6)
    if abs(phi) < 1.5:
        assert math.remainder(l - lam, 2 * math.pi) == pytest.approx(0.0, abs=1e-11)


def test_surface_altitude_is_normal_offset():
    base = EllipsoidSurface.preset()
    up = base.with_altitude(1234.5)
    tau = math.sin(0.6)
    e_lam, e_phi = base.topocentric_basis(tau, 0.3)
    normal = np.cross(e_lam, e_phi)
    normal /= np.linalg.norm(normal)
    diff = up.to_cartesian(tau, 0.3) - base.to_cartesian(tau, 0.3)
    np.testing.assert_allclose(diff, 1234.5 * normal, atol=1e-8)


def test_presets_and_scaling():
    assert set(PRESETS) >= {"WGS84", "GRS80"}
    s = EllipsoidSurface.preset("GRS80", h=10.0).scaled(1000.0)
    assert s.rho_e == 6378137000.0 and s.h == 10000.0


def test_boundary_helpers():
    b = GeodeticBoundary.from_degrees(10, 20, 30, 40)
    assert b.tau1 == pytest.approx(math.sin(math.radians(10)))
    assert b.dlam == pytest.approx(math.radians(20))
    assert b.reversed().reversed() == b
