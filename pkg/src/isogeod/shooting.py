"""Finite-element shooting solver on a uniform longitude mesh.

The trajectory ``tau(lambda)`` is advanced with a Taylor polynomial in
the longitude step, the arc length ``s(lambda)`` with its own (second
order) Taylor update. The launching parameter is adjusted by a short
interpolation search on the endpoint mismatch in ``tau``.

All derivatives are written in a form that stays finite at a latitude
extremum: with ``A = E/(c3 (M+h))`` the slope is ``north A sqrt(T)`` and
the curvature ``A^2 (L' T + T'/2)`` does not contain ``sqrt(T)`` at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import GeodesicParameter, discriminant_T
from .ellipsoid import EllipsoidSurface
from .errors import BeyondSolsticeError, DomainError, IntegrationError, MeridianError, SolverError
from .metric import fundamental_form_derivatives, gauss_E
from .spherical import c3_sphere, initial_north_sign

__all__ = [
    "ShootingConfig",
    "ShootingParameter",
    "TrajectorySample",
    "adjust_lambda_end",
    "c3_shoot",
    "initial_north_sign",
    "step_derivatives",
    "tau_shoot",
]

MAX_SECANT = 20


@dataclass(frozen=True)
class ShootingConfig:
    """Mesh and search settings.

    Parameters
    ----------
    n_steps : int
        Number of longitude intervals.
    taylor_order : {2, 3}
        Highest derivative of ``tau(lambda)`` in the step update.
    undersample : int
        Keep every ``undersample``-th mesh point in the returned samples
        (the last point is always kept).
    endpoint_tolerance : float
        Acceptable ``|tau_end - sin(phi2)|``.
    """

    n_steps: int = 400
    taylor_order: int = 3
    undersample: int = 10
    endpoint_tolerance: float = 1e-6

    def __post_init__(self):
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise DomainError(f"n_steps must be an integer >= 2, got {self.n_steps!r}")
        if self.taylor_order not in (2, 3):
            raise DomainError(f"taylor_order must be 2 or 3, got {self.taylor_order!r}")
        if int(self.undersample) != self.undersample or self.undersample < 1:
            raise DomainError(f"undersample must be a positive integer, got {self.undersample!r}")
        if not self.endpoint_tolerance > 0.0:
            raise DomainError("endpoint_tolerance must be positive")


@dataclass(frozen=True)
class TrajectorySample:
    """One retained mesh point.

    ``cartesian`` is ``surface.to_cartesian(sin(phi), lam)``; ``north`` is
    the sign of dtau/ds at the point.
    """

    cartesian: np.ndarray
    lam: float
    phi: float
    kappa: float
    s: float
    north: int = 1

    @property
    def tau(self):
        return math.sin(self.phi)


@dataclass(frozen=True)
class ShootingParameter(GeodesicParameter):
    """Result of :func:`c3_shoot`.

    ``stages_converged`` tells whether the four interpolation stages alone
    reached the tolerance; ``secant_iterations`` counts the extra polish
    steps taken otherwise.
    """

    endpoint_error: float = float("nan")
    stages_converged: bool = True
    secant_iterations: int = 0


def adjust_lambda_end(lambda1, lambda2):
    """Shift ``lambda2`` by multiples of 2 pi while that shortens ``|lambda2 - lambda1|``."""
    two_pi = 2.0 * math.pi
    while lambda2 - lambda1 > math.pi:
        lambda2 -= two_pi
    while lambda2 - lambda1 < -math.pi:
        lambda2 += two_pi
    return lambda2


def _log_terms(surface, tau):
    # L' = d ln A / dtau and its derivative, A = E / (c3 (M + h))
    E = gauss_E(surface, tau)
    dE, d2E = fundamental_form_derivatives(surface, tau)
    Mh = float(surface.radius_M(tau)) + surface.h
    _, dM, d2M = surface.curvature_derivatives(tau)
    a = dE / E
    b = float(dM) / Mh
    L1 = a - b
    L2 = d2E / E - a * a - float(d2M) / Mh + b * b
    return E, dE, Mh, L1, L2


def step_derivatives(surface, tau, c3, north=1, order=3, T=None):
    """Longitude derivatives used by one mesh step.

    Returns
    -------
    (dtau, d2tau, d3tau, ds, d2s)
        ``d^k tau / dlambda^k`` for k = 1..3 (the third is 0 for
        ``order=2``) and ``d^k s / dlambda^k`` for k = 1, 2. The third
        derivative of ``s`` is not used by the scheme.

    ``T`` may be passed to override the exact discriminant (e.g. a value
    clamped to 0 at a turning point).
    """
    if c3 == 0.0:
        raise MeridianError("longitude cannot parametrize a meridian (c3 = 0)")
    T0, dT, d2T = discriminant_T(surface, tau, c3)
    if T is None:
        T = T0
    if T < 0.0:
        raise BeyondSolsticeError(f"tau={tau!r} lies beyond the solstice of c3={c3!r}", discriminant=T)
    E, dE, Mh, L1, L2 = _log_terms(surface, tau)
    A = E / (c3 * Mh)
    st = math.sqrt(T)
    d1 = north * A * st
    d2 = A * A * (L1 * T + 0.5 * dT)
    if order == 3:
        d3 = north * A**3 * st * ((2.0 * L1 * L1 + L2) * T + 2.0 * L1 * dT + 0.5 * d2T)
    else:
        d3 = 0.0
    return d1, d2, d3, E / c3, d1 * dE / c3


def _sample(surface, tau, lam, s, c3, north, T):
    tau = max(-1.0, min(1.0, tau))
    kappa = math.atan2(c3 / (float(surface.radius_N(tau)) + surface.h), north * math.sqrt(T))
    return TrajectorySample(surface.to_cartesian(tau, lam), lam, math.asin(tau), kappa, s, north)


def _integrate(surface, boundary, c3, config, keep=True):
    if c3 == 0.0:
        raise MeridianError("longitude cannot parametrize a meridian (c3 = 0)")
    lam1 = boundary.lam1
    lam2 = adjust_lambda_end(lam1, boundary.lam2)
    if lam2 == lam1:
        raise DomainError("the longitude difference vanishes; the mesh is empty")
    n = int(config.n_steps)
    dl = (lam2 - lam1) / n
    order = config.taylor_order
    u = int(config.undersample)
    tau = math.sin(boundary.phi1)
    north = initial_north_sign(boundary)
    s = 0.0
    bound = 0.0
    samples = []
    for i in range(n + 1):
        lam = lam1 + i * dl
        T, dT, _ = discriminant_T(surface, tau, c3)
        if T < 0.0:
            # overshoot past the turning latitude within the last step
            if -T <= max(bound, 1e-14):
                T = 0.0
            else:
                raise IntegrationError(
                    f"discriminant turned negative (T={T:.3e}) without a detected solstice",
                    last_lambda=lam - dl,
                )
        if keep and (i % u == 0 or i == n):
            samples.append(_sample(surface, tau, lam, s, c3, north, T))
        if i == n:
            break
        d1, d2, d3, s1, s2 = step_derivatives(surface, tau, c3, north, order, T)
        # parabolic estimate of a latitude extremum inside this step
        if d2 != 0.0:
            frac = (-d1 / d2) / dl
            flip = 0.0 <= frac < 1.0
        else:
            flip = False
        step = dl * (d1 + dl * (0.5 * d2 + dl * d3 / 6.0))
        tau += float(step)
        if not abs(tau) < 1.0:
            raise IntegrationError(f"the step overshot the pole (tau={tau!r})", last_lambda=lam)
        s += float(dl * (s1 + 0.5 * dl * s2))
        bound = 2.0 * abs(dT * step)
        if flip:
            north = -north
    return samples, tau - math.sin(boundary.phi2), north


def _unit_surface(surface):
    # lengths in units of rho_e: the iteration then does not depend on the
    # length unit, and scaled problems give identical trajectories
    k = surface.rho_e
    return EllipsoidSurface(1.0, surface.e, surface.h / k), k


def tau_shoot(surface, boundary, c3, config=None):
    """Integrate the trajectory with parameter ``c3`` across the mesh.

    Returns
    -------
    samples : list of TrajectorySample
        Every ``config.undersample``-th mesh point plus the final one.
    endpoint_error : float
        ``tau_end - sin(phi2)``.

    Raises
    ------
    IntegrationError
        If the discriminant becomes negative beyond the local step bound.
    """
    config = config or ShootingConfig()
    unit, k = _unit_surface(surface)
    samples, err, _ = _integrate(unit, boundary, c3 / k, config)
    return [replace(x, cartesian=x.cartesian * k, s=x.s * k) for x in samples], err


def _clamp_c3(surface, boundary, c3):
    # |c3| must not exceed sqrt(E) at either endpoint or T < 0 there
    lim = min(math.sqrt(gauss_E(surface, math.sin(boundary.phi1))), math.sqrt(gauss_E(surface, math.sin(boundary.phi2))))
    lim *= 1.0 - 1e-12
    return max(-lim, min(lim, c3))


def c3_shoot(surface, boundary, config=None):
    """Launching parameter found by shooting on the endpoint latitude.

    Four calls to the integrator: the great-circle estimate, the estimate
    reduced by 0.5 %, a linear and then a quadratic interpolation of the
    endpoint error. If the mismatch still exceeds the tolerance, up to 20
    secant steps follow.

    Returns
    -------
    ShootingParameter

    Raises
    ------
    MeridianError
        For endpoints on one meridian.
    IntegrationError
        If a trial trajectory leaves the reachable latitude band, which
        happens when the mesh is too coarse for the route.
    SolverError
        If no trial reaches the tolerance; carries the best ``c3``.
    """
    config = config or ShootingConfig()
    lam2 = adjust_lambda_end(boundary.lam1, boundary.lam2)
    if abs(math.sin(lam2 - boundary.lam1)) < 1e-12 and abs(lam2 - boundary.lam1) < 1.0:
        raise MeridianError("endpoints lie on one meridian; shooting in longitude is impossible")
    tol = config.endpoint_tolerance
    north = initial_north_sign(boundary)
    surface, scale = _unit_surface(surface)
    tried = []
    flipped = {}

    def shoot(c3):
        c3 = float(_clamp_c3(surface, boundary, c3))
        _, err, north_end = _integrate(surface, boundary, c3, config, keep=False)
        err = float(err)
        tried.append((c3, err))
        flipped[c3] = north_end != north
        return c3, err

    def done(c3, err, stages_ok, k):
        return ShootingParameter(c3 * scale, north, flipped[c3], err, stages_ok, k)

    # stage 1: great circle
    ca, ea = shoot(c3_sphere(boundary, surface.H))
    if abs(ea) <= tol:
        return done(ca, ea, True, 0)
    # stage 2: small offset
    cb, eb = shoot(ca - 0.005 * ca)
    if abs(eb) <= tol:
        return done(cb, eb, True, 0)
    # stage 3: linear interpolation
    cc = ca - ea * (cb - ca) / (eb - ea) if eb != ea else cb
    cc, ec = shoot(cc)
    if abs(ec) <= tol:
        return done(cc, ec, True, 0)
    # stage 4: quadratic through the three trials, root nearest the last
    cd = _quadratic_root(ca, ea, cb, eb, cc, ec)
    if cd is not None:
        cd, ed = shoot(cd)
        if abs(ed) <= tol:
            return done(cd, ed, True, 0)
    # secant polish on the two best trials
    for k in range(1, MAX_SECANT + 1):
        (c0, e0), (c1, e1) = sorted(tried, key=lambda t: abs(t[1]))[:2]
        if e1 == e0:
            break
        c2, e2 = shoot(c0 - e0 * (c1 - c0) / (e1 - e0))
        if abs(e2) <= tol:
            return done(c2, e2, False, k)
        if c2 in (c0, c1):
            break
    best = min(tried, key=lambda t: abs(t[1]))
    raise SolverError("shooting did not reach the endpoint tolerance", best=best[0] * scale, residual=best[1])


def _quadratic_root(x0, y0, x1, y1, x2, y2):
    # Lagrange interpolant through three points, written in divided differences
    if len({x0, x1, x2}) < 3:
        return None
    f01 = (y1 - y0) / (x1 - x0)
    f12 = (y2 - y1) / (x2 - x1)
    a = (f12 - f01) / (x2 - x0)
    # p(x) = y2 + b (x - x2) + a (x - x2)^2 with b the slope at x2
    b = f12 + a * (x2 - x1)
    if a == 0.0:
        return x2 - y2 / b if b != 0.0 else None
    disc = b * b - 4.0 * a * y2
    if disc < 0.0:
        return None
    r = math.sqrt(disc)
    # stable pair of roots in the offset from x2, keep the smaller offset
    q = -0.5 * (b + math.copysign(r, b))
    cands = [q / a]
    if q != 0.0:
        cands.append(y2 / q)
    dx = min(cands, key=abs)
    return x2 + dx
