"""Exact pointwise quantities along a geodesic of the iso-altitude surface.

Everything here is a function of the latitude ``tau`` and of the first
integral ``c3 = E dlambda/ds`` of the trajectory. ``north`` is the sign of
``dtau/ds`` on the current piece of the trajectory.

The discriminant owned by this module is the exact one,
``T = 1 - tau^2 - c3^2 / (N(tau) + h)^2``; the truncated series uses a
different one with ``N + h`` replaced by the constant ``H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BeyondSolsticeError, MeridianError, NoSolsticeError, PoleSingularityError
from .metric import fundamental_form_derivatives, gauss_E, gauss_G

# discriminants this close below zero are rounding noise at a turning point
T_SLACK = 64 * 2.220446049250313e-16


@dataclass(frozen=True)
class GeodesicParameter:
    """Launching parameter of one trajectory.

    ``c3`` is positive for eastward and negative for westward routes;
    ``north`` is the sign of ``dtau/ds`` at the start point and
    ``via_solstice`` marks routes that pass a latitude extremum between
    the endpoints.
    """

    c3: float
    north: int = 1
    via_solstice: bool = False


@dataclass(frozen=True)
class TrajectoryState:
    tau: float
    lam: float
    s: float
    kappa: float
    north: int
    c3: float


def _sign(x):
    return -1 if x < 0 else 1


def dlambda_ds(surface, tau, c3):
    """``dlambda/ds = c3 / E(tau)``."""
    if abs(tau) >= 1.0:
        raise PoleSingularityError("dlambda/ds is undefined at the poles")
    return c3 / gauss_E(surface, tau)


def discriminant_T(surface, tau, c3):
    """Exact discriminant and its first two tau-derivatives.

    Returns
    -------
    (T, dT/dtau, d2T/dtau2)
        Negative ``T`` is returned as is; callers decide what it means.
    """
    e2 = surface.e2
    h = surface.h
    N = surface.radius_N(tau)
    Nh = N + h
    et = surface.e * tau
    q = (1.0 + et) * (1.0 - et)
    ratio = c3 / Nh
    T = (1.0 - tau) * (1.0 + tau) - ratio * ratio
    k = N * ratio * ratio * e2 / (Nh * q)
    dT = 2.0 * tau * (k - 1.0)
    d2T = -2.0 * (1.0 - k * (1.0 + 3.0 * h * e2 * tau * tau / (Nh * q)))
    return float(T), float(dT), float(d2T)


def _checked_T(surface, tau, c3):
    T = discriminant_T(surface, tau, c3)[0]
    if T < 0.0:
        if T >= -T_SLACK:
            return 0.0
        raise BeyondSolsticeError(
            f"tau={tau!r} lies beyond the solstice of c3={c3!r} (T={T:.3e})", discriminant=T
        )
    return T


def dtau_ds(surface, tau, c3, north=1):
    """``north * sqrt(T) / (h + M)``."""
    T = _checked_T(surface, tau, c3)
    return north * math.sqrt(T) / (surface.h + surface.radius_M(tau))


def dtau_dlambda(surface, tau, c3, north=1):
    """``E dtau/ds / c3``; the sign is ``north * sign(c3)``."""
    if c3 == 0.0:
        raise MeridianError("longitude is constant on a meridian; dtau/dlambda is undefined")
    return gauss_E(surface, tau) * dtau_ds(surface, tau, c3, north) / c3


def _turning_residual(surface, tau, c3):
    # (1 - tau^2)(N + h)^2 - c3^2 and its tau-derivative dE/dtau
    return gauss_E(surface, tau) - c3 * c3, fundamental_form_derivatives(surface, tau)[0]


def solstice_quartic(surface, c3):
    """Coefficients ``a0..a4`` of the quartic in ``u = tau_m^2``."""
    rho = surface.rho_e
    h = surface.h
    e2 = surface.e2
    c2 = c3 * c3
    h2 = h * h
    r2 = rho * rho
    return (
        ((rho + h) ** 2 - c2) * ((rho - h) ** 2 - c2),
        2.0 * (-((r2 - h2) ** 2) + c2 * (r2 + h2) + e2 * (-((c2 - h2) ** 2) + r2 * (c2 + h2))),
        (r2 - h2) ** 2 + 2.0 * e2 * (2.0 * h2 * h2 - 2.0 * c2 * h2 - 2.0 * r2 * h2 - r2 * c2) + e2 * e2 * (c2 - h2) ** 2,
        2.0 * (h * surface.e) ** 2 * (r2 - h2 + e2 * (c2 - h2)),
        (h * surface.e) ** 4,
    )


def tau_tropic_seed(surface, c3):
    """Second-order (in e^2) estimate of ``tau_m^2``."""
    H = surface.H
    w = (c3 / H) ** 2
    rbar = surface.rho_e / H
    e2 = surface.e2
    return (1.0 - w) * (1.0 + w * rbar * e2 * (1.0 + 0.25 * (3.0 * (1.0 - w) + rbar * (7.0 * w - 3.0)) * e2))


def tau_tropic(surface, c3, newton_steps=4):
    """Largest ``|sin(phi)|`` reached by the trajectory with parameter ``c3``.

    Solves ``(1 - tau^2)(N(tau) + h)^2 = c3^2`` for ``tau >= 0``. A few
    Newton steps on the quartic in ``tau^2`` start from the series seed;
    the result is polished on the unsquared equation and falls back to
    bisection if the residual stays above ``1e-12 H^2``.
    """
    H = surface.H
    if abs(c3) > H:
        raise NoSolsticeError(f"|c3|={abs(c3)!r} exceeds H={H!r}; no reachable latitude")
    a = solstice_quartic(surface, c3)
    u = tau_tropic_seed(surface, c3)
    for _ in range(newton_steps):
        f = a[0] + u * (a[1] + u * (a[2] + u * (a[3] + u * a[4])))
        df = a[1] + u * (2.0 * a[2] + u * (3.0 * a[3] + u * 4.0 * a[4]))
        if df == 0.0:
            break
        u -= f / df
    tol = 1e-12 * H * H
    tau = math.sqrt(u) if 0.0 <= u <= 1.0 else float("nan")
    if math.isfinite(tau):
        for _ in range(3):
            g, dg = _turning_residual(surface, tau, c3)
            if abs(g) <= 1e-3 * tol or dg == 0.0:
                break
            step = tau - g / dg
            if not 0.0 <= step <= 1.0:
                break
            tau = step
        g = _turning_residual(surface, tau, c3)[0]
        if abs(g) <= tol:
            return float(tau)
    return _tau_tropic_bisect(surface, c3)


def _tau_tropic_bisect(surface, c3):
    lo, hi = 0.0, 1.0
    glo = _turning_residual(surface, lo, c3)[0]
    ghi = _turning_residual(surface, hi, c3)[0]
    if glo < 0.0 or ghi > 0.0:
        raise NoSolsticeError(f"no turning latitude in [0, 1] for c3={c3!r}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _turning_residual(surface, mid, c3)[0] >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def nautical_angle(surface, tau, c3, north=1):
    """Course ``kappa`` measured North over East, in ``(-pi, pi]``."""
    T = _checked_T(surface, tau, c3)
    return math.atan2(c3 / (surface.radius_N(tau) + surface.h), north * math.sqrt(T))


def unit_speed_residual(surface, state):
    """``|E (dlambda/ds)^2 + G (dtau/ds)^2 / (1 - tau^2) - 1|`` at ``state``."""
    tau = state.tau
    E = gauss_E(surface, tau)
    G = gauss_G(surface, tau)
    dl = state.c3 / E
    dt = dtau_ds(surface, tau, state.c3, state.north)
    return abs(E * dl * dl + G * dt * dt / ((1.0 - tau) * (1.0 + tau)) - 1.0)
