"""Closed forms on the ellipsoid itself (h = 0) through elliptic integrals.

At zero altitude the longitude and distance integrals reduce to
incomplete elliptic integrals of the third and second kind with the
modular angle ``zeta``,

    sin(zeta) = e sqrt((1 - c3^2/rho_e^2) / (1 - c3^2 e^2/rho_e^2)),

and amplitude ``arcsin(e tau / sin(zeta))``, which reaches pi/2 exactly at
the latitude extremum. The Legendre forms are evaluated through Carlson's
symmetric integrals. Everything here is a reference for tests, not a
production solver path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ..core import T_SLACK
from ..errors import BeyondSolsticeError, DomainError, MeridianError, SolverError

# duplication stops once the arguments agree to this relative spread
_SPREAD = 1e-16
_MAX_DUP = 60


def _check_xyz(x, y, z):
    if min(x, y, z) < 0.0 or sum(v == 0.0 for v in (x, y, z)) > 1:
        raise DomainError(f"symmetric integrals need x, y, z >= 0 with at most one zero, got {(x, y, z)!r}")


def carlson_rf(x, y, z):
    """``RF(x, y, z) = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z))``."""
    x, y, z = float(x), float(y), float(z)
    _check_xyz(x, y, z)
    for _ in range(_MAX_DUP):
        mu = (x + y + z) / 3.0
        spread = max(abs(mu - x), abs(mu - y), abs(mu - z)) / mu
        if spread < _SPREAD ** (1.0 / 6.0):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
    mu = (x + y + z) / 3.0
    X, Y = 1.0 - x / mu, 1.0 - y / mu
    Z = -(X + Y)
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) / math.sqrt(mu)


def carlson_rc(x, y):
    """Degenerate case ``RC(x, y) = RF(x, y, y)`` for ``y > 0``.

    Evaluated by duplication rather than the arccos/arccosh closed form,
    which cancels catastrophically for ``x`` close to ``y``.
    """
    x, y = float(x), float(y)
    if x < 0.0 or y <= 0.0:
        raise DomainError("RC needs x >= 0 and y > 0")
    return carlson_rf(x, y, y)


def carlson_rj(x, y, z, p):
    """``RJ(x, y, z, p) = 3/2 int_0^inf dt / ((t+p) sqrt((t+x)(t+y)(t+z)))``, ``p > 0``."""
    x, y, z, p = float(x), float(y), float(z), float(p)
    _check_xyz(x, y, z)
    if p <= 0.0:
        raise DomainError("RJ is implemented for p > 0 only")
    acc = 0.0
    fac = 1.0
    for _ in range(_MAX_DUP):
        mu = (x + y + z + 2.0 * p) / 5.0
        spread = max(abs(mu - x), abs(mu - y), abs(mu - z), abs(mu - p)) / mu
        if spread < _SPREAD ** (1.0 / 6.0):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        alpha = (p * (sx + sy + sz) + sx * sy * sz) ** 2
        beta = p * (p + lam) ** 2
        acc += fac * carlson_rc(alpha, beta)
        fac *= 0.25
        x, y, z, p = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam), 0.25 * (p + lam)
    mu = (x + y + z + 2.0 * p) / 5.0
    X, Y, Z = 1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu
    P = -(X + Y + Z) / 2.0
    E2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    E3 = X * Y * Z + 2.0 * E2 * P + 4.0 * P**3
    E4 = (2.0 * X * Y * Z + E2 * P + 3.0 * P**3) * P
    E5 = X * Y * Z * P * P
    series = (
        1.0
        - 3.0 * E2 / 14.0
        + E3 / 6.0
        + 9.0 * E2 * E2 / 88.0
        - 3.0 * E4 / 22.0
        - 9.0 * E2 * E3 / 52.0
        + 3.0 * E5 / 26.0
    )
    return 3.0 * acc + fac * series / (mu * math.sqrt(mu))


def carlson_rd(x, y, z):
    """``RD(x, y, z) = RJ(x, y, z, z)``."""
    return carlson_rj(x, y, z, z)


def symmetric_elliptic(x, y, z, p):
    """Return ``(RF(x,y,z), RD(x,y,z), RJ(x,y,z,p))``."""
    return carlson_rf(x, y, z), carlson_rd(x, y, z), carlson_rj(x, y, z, p)


# Legendre forms; the amplitude is passed as (sin, cos) to keep full
# precision near pi/2


def _legendre_E(s, c, k2):
    d2 = (1.0 - k2 * s * s)
    return s * carlson_rf(c * c, d2, 1.0) - k2 * s**3 / 3.0 * carlson_rd(c * c, d2, 1.0)


def _legendre_Pi(n, s, c, k2):
    # int_0^phi d(theta) / ((1 - n sin^2) sqrt(1 - k^2 sin^2))
    d2 = 1.0 - k2 * s * s
    out = s * carlson_rf(c * c, d2, 1.0)
    if n != 0.0 and s != 0.0:
        out += n * s**3 / 3.0 * carlson_rj(c * c, d2, 1.0, 1.0 - n * s * s)
    return out


def elliptic_e(phi, k):
    """Incomplete integral of the second kind ``E(phi | k^2)`` for ``|phi| <= pi/2``."""
    return _legendre_E(math.sin(phi), math.cos(phi), k * k)


def elliptic_pi(n, phi, k):
    """Incomplete integral of the third kind, ``int dtheta / ((1 - n sin^2) sqrt(1 - k^2 sin^2))``."""
    return _legendre_Pi(n, math.sin(phi), math.cos(phi), k * k)


@dataclass(frozen=True)
class ModularAngle:
    zeta: float
    sin_zeta: float

    @classmethod
    def from_c3(cls, surface, c3):
        w = (c3 / surface.rho_e) ** 2
        e2 = surface.e2
        if w > 1.0:
            raise BeyondSolsticeError(f"|c3|={abs(c3)!r} exceeds rho_e; no reachable latitude", discriminant=1.0 - w)
        k = surface.e * math.sqrt((1.0 - w) / (1.0 - w * e2))
        return cls(math.asin(k), k)


def _require_h0(surface):
    if surface.h != 0.0:
        raise DomainError("the elliptic closed forms hold on the ellipsoid itself (h = 0) only")


def _amplitude(surface, tau, c3):
    # sin and cos of arcsin(e tau / sin(zeta)), written without dividing by e
    w = (c3 / surface.rho_e) ** 2
    e2 = surface.e2
    tm2 = (1.0 - w) / (1.0 - w * e2)
    if tm2 <= 0.0:
        if tau == 0.0:
            return 0.0, 1.0
        raise BeyondSolsticeError(f"tau={tau!r} unreachable for c3={c3!r}", discriminant=-tau * tau)
    s = tau / math.sqrt(tm2)
    if abs(s) > 1.0:
        if abs(s) - 1.0 > T_SLACK:
            raise BeyondSolsticeError(f"tau={tau!r} lies beyond the solstice of c3={c3!r}", discriminant=1.0 - s * s)
        s = math.copysign(1.0, s)
    return s, math.sqrt((1.0 - s) * (1.0 + s))


def distance_h0(surface, tau, c3, at_solstice=False):
    """Arc-length underivative on the ellipsoid, odd in ``tau``.

    ``at_solstice`` evaluates exactly at the turning latitude on the side
    of ``sign(tau)`` (amplitude pi/2).
    """
    _require_h0(surface)
    rho = surface.rho_e
    e2 = surface.e2
    w = (c3 / rho) ** 2
    k2 = ModularAngle.from_c3(surface, c3).sin_zeta ** 2
    if at_solstice:
        s, c = math.copysign(1.0, tau), 0.0
        tm2 = (1.0 - w) / (1.0 - w * e2)
        tau = math.copysign(math.sqrt(tm2), tau)
    else:
        s, c = _amplitude(surface, tau, c3)
    et = surface.e * tau
    # T / (1 - e^2 tau^2): vanishes at the turning latitude
    root = max(0.0, (1.0 - tau) * (1.0 + tau) / ((1.0 - et) * (1.0 + et)) - w)
    return rho * (math.sqrt(1.0 - w * e2) * _legendre_E(s, c, k2) - e2 * tau * math.sqrt(root))


def longitude_h0(surface, tau, c3, at_solstice=False):
    """Longitude underivative on the ellipsoid, odd in ``tau``; zero for ``c3 = 0``."""
    _require_h0(surface)
    if c3 == 0.0:
        return 0.0
    rho = surface.rho_e
    e2 = surface.e2
    w = (c3 / rho) ** 2
    if at_solstice:
        s, c = math.copysign(1.0, tau), 0.0
    else:
        s, c = _amplitude(surface, tau, c3)
    # n = sin^2(zeta)/e^2, the characteristic of the third-kind integral
    n = (1.0 - w) / (1.0 - w * e2)
    k2 = e2 * n
    return (c3 / rho) * (1.0 - e2) / math.sqrt(1.0 - w * e2) * _legendre_Pi(n, s, c, k2)


def _route(func, surface, tau1, tau2, c3, north, via):
    if via:
        tt = north * 1.0
        return north * (2.0 * func(surface, tt, c3, True) - func(surface, tau1, c3) - func(surface, tau2, c3))
    return north * (func(surface, tau2, c3) - func(surface, tau1, c3))


def delta_lambda_h0(surface, tau1, tau2, c3, north, via_solstice=False):
    return _route(longitude_h0, surface, tau1, tau2, c3, north, via_solstice)


def path_length_h0(surface, tau1, tau2, c3, north, via_solstice=False):
    return _route(distance_h0, surface, tau1, tau2, c3, north, via_solstice)


def solve_inverse_h0(surface, boundary, grid=240):
    """Shortest geodesic between the boundary points from the closed forms.

    Every route shape (direct, or through the northern or southern
    extremum) is scanned for roots of the longitude balance in ``c3``; the
    root with the smallest length wins.

    Returns
    -------
    (c3, length, north, via_solstice)
    """
    _require_h0(surface)
    dlam = math.remainder(boundary.lam2 - boundary.lam1, 2.0 * math.pi)
    if abs(math.sin(dlam)) < 1e-12:
        raise MeridianError("meridian boundary; c3 = 0")
    t1, t2 = math.sin(boundary.phi1), math.sin(boundary.phi2)
    sign = 1.0 if dlam > 0 else -1.0
    rho = surface.rho_e
    xmax = min(
        math.sqrt((1.0 - t) * (1.0 + t) / ((1.0 - surface.e * t) * (1.0 + surface.e * t))) for t in (t1, t2)
    )
    direct = -1 if t2 < t1 else 1
    # cluster points towards xmax, where the route shapes meet
    xs = xmax * np.concatenate([np.linspace(1e-6, 0.9, grid // 2), 1.0 - np.geomspace(0.1, 1e-13, grid // 2)])
    found = []
    for north, via in ((direct, False), (1, True), (-1, True)):
        def f(x, north=north, via=via):
            return delta_lambda_h0(surface, t1, t2, sign * x * rho, north, via) - dlam

        vals = []
        for x in xs:
            try:
                vals.append((x, f(x)))
            except BeyondSolsticeError:
                continue
        for (a, fa), (b, fb) in zip(vals, vals[1:]):
            if fa == 0.0:
                roots = [a]
            elif (fa < 0.0) != (fb < 0.0):
                roots = [brentq(f, a, b, xtol=1e-16, rtol=4 * np.finfo(float).eps)]
            else:
                continue
            for x in roots:
                c3 = sign * x * rho
                found.append((c3, path_length_h0(surface, t1, t2, c3, north, via), north, via))
    if not found:
        raise SolverError("no closed-form route matches the longitude difference", best=None, residual=None)
    return min(found, key=lambda r: r[1])
