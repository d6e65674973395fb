import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ODE_REFERENCE
from isogeod import (
    DomainError,
    EllipsoidSurface,
    GeodeticBoundary,
    IntegrationError,
    MeridianError,
    SolverError,
    TrajectoryState,
    unit_speed_residual,
)
from isogeod.core import dtau_dlambda
from isogeod.metric import gauss_E
from isogeod.shooting import (
    ShootingConfig,
    _quadratic_root,
    adjust_lambda_end,
    c3_shoot,
    step_derivatives,
    tau_shoot,
)
from isogeod.spherical import c3_sphere, central_angle


@given(st.floats(-10.0, 10.0), st.floats(-20.0, 20.0))
def test_adjust_lambda_end(l1, l2):
    a = adjust_lambda_end(l1, l2)
    assert abs(a - l1) <= math.pi + 1e-12
    k = (a - l2) / (2 * math.pi)
    assert k == pytest.approx(round(k), abs=1e-9)


@pytest.mark.parametrize("kw", [dict(n_steps=1), dict(n_steps=2.5), dict(taylor_order=4), dict(undersample=0), dict(endpoint_tolerance=0.0)])
def test_config_validation(kw):
    with pytest.raises(DomainError):
        ShootingConfig(**kw)


@pytest.mark.parametrize("north", [1, -1])
@pytest.mark.parametrize("h", [0.0, 4e5])
def test_step_derivatives_chain_rule(north, h):
    s = EllipsoidSurface.preset("WGS84", h=h)
    c3 = -0.45 * s.H
    tau, d = 0.35, 1e-6

    def deriv(k, t):
        return step_derivatives(s, t, c3, north)[k]

    d1, d2, d3, ds, d2s = step_derivatives(s, tau, c3, north)
    assert d1 == pytest.approx(dtau_dlambda(s, tau, c3, north), rel=1e-13)
    # d/dlambda = d1 * d/dtau along the trajectory
    assert d2 == pytest.approx(d1 * (deriv(0, tau + d) - deriv(0, tau - d)) / (2 * d), rel=1e-7)
    assert d3 == pytest.approx(d1 * (deriv(1, tau + d) - deriv(1, tau - d)) / (2 * d), rel=1e-6)
    assert ds == pytest.approx(gauss_E(s, tau) / c3)
    assert d2s == pytest.approx(d1 * (deriv(3, tau + d) - deriv(3, tau - d)) / (2 * d), rel=1e-7)
    assert step_derivatives(s, tau, c3, north, order=2)[2] == 0.0


def test_step_derivatives_regular_at_turning_point():
    s = EllipsoidSurface.preset()
    c3 = 0.5 * s.H
    from isogeod.core import tau_tropic

    t = tau_tropic(s, c3)
    d1, d2, d3, *_ = step_derivatives(s, t, c3, T=0.0)
    assert d1 == 0.0 and d3 == 0.0
    # tau turns back towards the equator
    assert d2 < 0.0 and math.isfinite(d2)


def test_sphere_great_circle_is_first_stage():
    s = EllipsoidSurface(6378137.0, 0.0, 4e5)
    b = GeodeticBoundary.from_degrees(-20, 10, 35, 80)
    p = c3_shoot(s, b, ShootingConfig(1000))
    assert p.c3 == c3_sphere(b, s.H)
    assert p.stages_converged and p.secant_iterations == 0
    samples, err = tau_shoot(s, b, p.c3, ShootingConfig(1000))
    assert abs(err) < 1e-9
    assert samples[-1].s == pytest.approx(s.H * central_angle(b), rel=1e-6)


@pytest.mark.parametrize("name", sorted(ODE_REFERENCE))
def test_c3_shoot_against_ode_reference(name):
    s, b, c3_ref, length_ref, via = ODE_REFERENCE[name]
    cfg = ShootingConfig(1000)
    p = c3_shoot(s, b, cfg)
    assert p.via_solstice == via
    assert abs(p.endpoint_error) <= cfg.endpoint_tolerance
    assert p.c3 == pytest.approx(c3_ref, rel=1e-7)
    samples, _ = tau_shoot(s, b, p.c3, cfg)
    assert samples[-1].s == pytest.approx(length_ref, rel=1e-6)
    assert samples[-1].lam == pytest.approx(adjust_lambda_end(b.lam1, b.lam2), abs=1e-12)


def test_convergence_order():
    s, b, c3_ref, *_ = ODE_REFERENCE["direct_h0"]
    errs = {o: [abs(tau_shoot(s, b, c3_ref, ShootingConfig(n, o))[1]) for n in (200, 400, 800)] for o in (2, 3)}
    r3 = [a / b for a, b in zip(errs[3], errs[3][1:])]
    r2 = [a / b for a, b in zip(errs[2], errs[2][1:])]
    assert all(7.0 < r < 9.0 for r in r3)
    assert all(3.5 < r < 4.5 for r in r2)


def test_samples_undersampling_and_invariants():
    s, b, c3_ref, length_ref, _ = ODE_REFERENCE["via_south_hm5km"]
    cfg = ShootingConfig(400, undersample=7)
    samples, _ = tau_shoot(s, b, c3_ref, cfg)
    assert len(samples) == 400 // 7 + 2
    assert samples[0].s == 0.0 and samples[0].lam == b.lam1
    assert np.all(np.diff([x.s for x in samples]) > 0)
    for x in samples:
        state = TrajectoryState(x.tau, x.lam, x.s, x.kappa, x.north, c3_ref)
        assert unit_speed_residual(s, state) < 1e-12
        # cartesian column consistent with the angles
        assert np.allclose(x.cartesian, s.to_cartesian(math.sin(x.phi), x.lam))
    # the route passes the southern extremum
    assert samples[0].north == -1 and samples[-1].north == 1


def test_scaling_and_reversal():
    s, b, *_ = ODE_REFERENCE["direct_h400km"]
    cfg = ShootingConfig(400)
    p = c3_shoot(s, b, cfg)
    a, _ = tau_shoot(s, b, p.c3, cfg)
    big = s.scaled(1000.0)
    q = c3_shoot(big, b, cfg)
    c, _ = tau_shoot(big, b, q.c3, cfg)
    assert c[-1].s == pytest.approx(1000.0 * a[-1].s, rel=1e-12)
    assert max(abs(x.kappa - y.kappa) for x, y in zip(a, c)) < 1e-12
    r = b.reversed()
    pr = c3_shoot(s, r, cfg)
    back, _ = tau_shoot(s, r, pr.c3, cfg)
    assert back[-1].s == pytest.approx(a[-1].s, rel=1e-6)


def test_quadratic_root():
    f = lambda x: (x - 2.0) * (x + 5.0)
    assert _quadratic_root(0.0, f(0.0), 1.0, f(1.0), 1.5, f(1.5)) == pytest.approx(2.0)
    assert _quadratic_root(-6.0, f(-6.0), -5.5, f(-5.5), -4.5, f(-4.5)) == pytest.approx(-5.0)
    assert _quadratic_root(0.0, 1.0, 0.0, 1.0, 1.0, 2.0) is None
    assert _quadratic_root(0.0, 1.0, 1.0, 2.0, 2.0, 3.0) == pytest.approx(-1.0)


def test_meridian_and_errors():
    s = EllipsoidSurface.preset()
    with pytest.raises(MeridianError):
        c3_shoot(s, GeodeticBoundary.from_degrees(10, 5, 40, 5))
    with pytest.raises(MeridianError):
        tau_shoot(s, GeodeticBoundary.from_degrees(10, 5, 40, 50), 0.0)
    with pytest.raises(IntegrationError):
        tau_shoot(s, GeodeticBoundary.from_degrees(60, 0, -60, 100), 0.05 * s.H, ShootingConfig(10))


def test_near_polar_route_unsupported():
    # a uniform longitude mesh cannot resolve the fast turn near the pole
    s = EllipsoidSurface.preset()
    b = GeodeticBoundary.from_degrees(80, 0, 80, 179)
    with pytest.raises((SolverError, IntegrationError)) as info:
        c3_shoot(s, b, ShootingConfig(50))
    if isinstance(info.value, SolverError):
        assert info.value.best is not None
