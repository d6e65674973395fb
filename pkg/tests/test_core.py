import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isogeod import (
    BeyondSolsticeError,
    EllipsoidSurface,
    MeridianError,
    NoSolsticeError,
    PoleSingularityError,
    TrajectoryState,
    nautical_angle,
    tau_tropic,
    unit_speed_residual,
)
from isogeod.core import (
    _tau_tropic_bisect,
    _turning_residual,
    discriminant_T,
    dlambda_ds,
    dtau_dlambda,
    dtau_ds,
    solstice_quartic,
    tau_tropic_seed,
)
from isogeod.metric import gauss_E

surfaces = st.builds(
    EllipsoidSurface,
    st.just(6378137.0),
    st.floats(0.0, 0.3),
    st.floats(-1e4, 1e6),
)


@given(surfaces, st.floats(-0.95, 0.95), st.floats(0.0, 0.9))
def test_discriminant_derivatives_fd(s, tau, frac):
    c3 = frac * s.H
    d = 1e-6
    T, dT, d2T = discriminant_T(s, tau, c3)
    Tp, dTp, _ = discriminant_T(s, tau + d, c3)
    Tm, dTm, _ = discriminant_T(s, tau - d, c3)
    assert dT == pytest.approx((Tp - Tm) / (2 * d), abs=1e-8)
    assert d2T == pytest.approx((dTp - dTm) / (2 * d), abs=1e-6)


@given(surfaces, st.floats(-0.999, 0.999))
def test_tau_tropic_matches_bisection(s, frac):
    c3 = frac * s.H
    t = tau_tropic(s, c3)
    assert abs(_turning_residual(s, t, c3)[0]) <= 1e-12 * s.H**2
    assert t == pytest.approx(_tau_tropic_bisect(s, c3), abs=1e-10)
    assert discriminant_T(s, t, c3)[0] == pytest.approx(0.0, abs=1e-12)


def test_quartic_root_is_tau_tropic_squared():
    s = EllipsoidSurface(6378137.0, 0.2, 3e5)
    c3 = 0.6 * s.H
    u = tau_tropic(s, c3) ** 2
    a = solstice_quartic(s, c3)
    val = sum(ak * u**k for k, ak in enumerate(a))
    assert abs(val) < 1e-12 * max(abs(x) for x in a)
    assert tau_tropic_seed(s, c3) == pytest.approx(u, rel=1e-5)


def test_tau_tropic_sphere_closed_form():
    s = EllipsoidSurface(2.0, 0.0)
    assert tau_tropic(s, 1.2) == pytest.approx(math.sqrt(1 - 0.36), rel=1e-14)


def test_tau_tropic_out_of_range(wgs84):
    with pytest.raises(NoSolsticeError):
        tau_tropic(wgs84, 1.01 * wgs84.H)


def test_pointwise_rates(wgs84):
    tau, c3 = 0.3, 0.5 * wgs84.H
    assert dlambda_ds(wgs84, tau, c3) == pytest.approx(c3 / gauss_E(wgs84, tau))
    # dtau/dlambda is the ratio of the two s-rates
    ratio = dtau_ds(wgs84, tau, c3, -1) / dlambda_ds(wgs84, tau, c3)
    assert dtau_dlambda(wgs84, tau, c3, -1) == pytest.approx(ratio, rel=1e-14)
    with pytest.raises(MeridianError):
        dtau_dlambda(wgs84, tau, 0.0)
    with pytest.raises(PoleSingularityError):
        dlambda_ds(wgs84, 1.0, c3)
    with pytest.raises(BeyondSolsticeError):
        dtau_ds(wgs84, 0.99, c3)


@given(surfaces, st.floats(-0.9, 0.9), st.floats(-0.99, 0.99), st.sampled_from([-1, 1]))
def test_unit_speed_identity(s, tau, frac, north):
    c3 = frac * math.sqrt(gauss_E(s, tau))
    state = TrajectoryState(tau, 0.0, 0.0, nautical_angle(s, tau, c3, north), north, c3)
    assert unit_speed_residual(s, state) < 1e-12


def test_nautical_angle_quadrants(wgs84):
    H = wgs84.H
    assert nautical_angle(wgs84, 0.0, H) == pytest.approx(math.pi / 2)
    assert nautical_angle(wgs84, 0.0, -H) == pytest.approx(-math.pi / 2)
    assert nautical_angle(wgs84, 0.0, 0.0, 1) == 0.0
    assert nautical_angle(wgs84, 0.0, 0.0, -1) == pytest.approx(math.pi)
    k = nautical_angle(wgs84, 0.2, 0.3 * H, -1)
    assert math.pi / 2 < k < math.pi
    # sin(kappa) (N + h) cos(phi) = c3 / sqrt(E) (N + h) cos(phi) = c3
    tau = 0.2
    assert math.sin(k) * math.sqrt(gauss_E(wgs84, tau)) == pytest.approx(0.3 * H, rel=1e-13)
