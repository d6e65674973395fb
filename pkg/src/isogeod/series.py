"""Eccentricity-series solution of the inverse problem.

The longitude and distance integrals along a trajectory are expanded to
fourth order in ``e``. With ``q = c3/H`` and ``T = 1 - tau^2 - q^2`` the
underivatives are sums of ``arctan(. / sqrt(T))`` terms and algebraic
terms in ``tau / T^(k/2)``.

At a latitude extremum the algebraic terms diverge; the truncated
expansion is non-uniform there. Values "at the solstice" are the finite
parts: the arctangents take their limit ``pi/2`` and the half-integer
power terms are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import T_SLACK, GeodesicParameter
from .ellipsoid import GeodeticBoundary
from .errors import BeyondSolsticeError, DegenerateGeometryError, DomainError, MeridianError, SolverError
from .spherical import c3_sphere, final_north_sign, initial_north_sign

ORDERS = (0, 2, 4)

#: |sin(dlambda)| below this is treated as a meridian
MERIDIAN_THRESHOLD = 1e-12


@dataclass(frozen=True)
class BranchedAngle:
    """An arctangent continued across branches: ``principal + branch * pi``."""

    principal: float
    branch: int = 0

    @property
    def value(self):
        return self.principal + self.branch * math.pi


def branched_arctan(num, den, tau, c3):
    """Continuous odd extension of ``arctan(num/den)`` along ``|tau| <= tau_m``.

    The slope at ``tau = 0`` has the sign of ``c3``; whenever
    ``sgn(tau) sgn(c3) sgn(principal)`` is negative the principal value
    is moved by ``pi sgn(tau) sgn(c3)``.
    """
    num, den, tau, c3 = float(num), float(den), float(tau), float(c3)
    principal = math.atan2(num, den) if den >= 0.0 else math.atan(num / den)
    st = (tau > 0) - (tau < 0)
    sc = (c3 > 0) - (c3 < 0)
    sp = (principal > 0) - (principal < 0)
    branch = st * sc if st * sc * sp < 0 else 0
    return BranchedAngle(principal, branch)


def _check_order(order):
    if order not in ORDERS:
        raise DomainError(f"series order must be one of {ORDERS}, got {order!r}")


def series_T(surface, tau, c3):
    """``1 - tau^2 - (c3/H)^2`` with the constant ``H = rho_e + h``."""
    q = c3 / surface.H
    return (1.0 - tau) * (1.0 + tau) - q * q


def _T_or_raise(surface, tau, c3):
    T = series_T(surface, tau, c3)
    if abs(T) <= T_SLACK:
        # rounding noise at a turning point
        return 0.0
    if T < 0.0:
        raise BeyondSolsticeError(f"tau={tau!r} unreachable for c3={c3!r} (T={T:.3e})", discriminant=T)
    return T


def _sgn(x):
    return (x > 0) - (x < 0)


def _solstice_T(surface, tau, c3, at_solstice):
    if at_solstice:
        return 0.0
    return _T_or_raise(surface, tau, c3)


def lambda_underivative(surface, tau, c3, order=4, at_solstice=False):
    """Underivative of the longitude integral, odd in ``tau``.

    At ``T == 0``, or when ``at_solstice`` is set, the finite part is
    returned (see module docstring).
    """
    _check_order(order)
    tau, c3 = float(tau), float(c3)
    H = surface.H
    q = c3 / H
    T = _solstice_T(surface, tau, c3, at_solstice)
    st = math.sqrt(T)
    lam = branched_arctan(tau * q, st, tau, c3).value
    if order == 0 or surface.e == 0.0:
        return lam
    r = surface.rho_e / H
    e2 = surface.e2
    at = math.atan2(tau, st)
    alg1 = tau / st if T > 0.0 else 0.0
    lam -= 0.5 * q * r * (alg1 + at) * e2
    if order == 4:
        q2 = q * q
        b = -2.0 * q2 * r + 4.0 * q2 * r * T + 2.0 * q2 * q2 * r - 6.0 * q2 * T + 6.0 * T - 9.0 * T * T - 4.0 * r * T + 6.0 * r * T * T
        c = 3.0 - 2.0 * r - 3.0 * q2 + 4.0 * q2 * r
        alg3 = tau * b / (T * st) if T > 0.0 else 0.0
        lam -= q * r / 16.0 * (alg3 + c * at) * e2 * e2
    return lam


def distance_underivative(surface, tau, c3, order=4, at_solstice=False):
    """Underivative of the arc-length integral, odd in ``tau``.

    At ``T == 0``, or when ``at_solstice`` is set, the finite part is
    returned (see module docstring).
    """
    _check_order(order)
    tau, c3 = float(tau), float(c3)
    H = surface.H
    q = c3 / H
    q2 = q * q
    T = _solstice_T(surface, tau, c3, at_solstice)
    st = math.sqrt(T)
    at = math.atan2(tau, st)
    s = H * at
    if order == 0 or surface.e == 0.0:
        return s
    rho = surface.rho_e
    r = rho / H
    e2 = surface.e2
    if T > 0.0:
        alg1 = tau * (3.0 * (1.0 - tau) * (1.0 + tau) - q2) / st
    else:
        alg1 = 0.0
    s -= 0.25 * rho * ((1.0 + q2) * at + alg1) * e2
    if order == 4:
        q4 = q2 * q2
        a = 9.0 * q4 - 6.0 * q2 - 12.0 * q4 * r + 4.0 * q2 * r - 3.0
        b = (
            24.0 * T * q4
            - 24.0 * T * q2
            + 63.0 * T * T * q2
            - 8.0 * r * q4 * q2
            + 8.0 * r * q4
            - 8.0 * r * T * q4
            + 8.0 * r * T * q2
            - 12.0 * r * T * T * q2
            - 27.0 * T * T
            + 30.0 * T * T * T
        )
        alg3 = tau * b / (T * st) if T > 0.0 else 0.0
        s += rho / 64.0 * (a * at + alg3) * e2 * e2
    return s


def _solstice_tau(surface, c3, north):
    q = c3 / surface.H
    return north * math.sqrt(max(0.0, (1.0 - q) * (1.0 + q)))


def _combine(func, surface, tau1, tau2, c3, north, via_solstice, order):
    tau1, tau2, c3 = float(tau1), float(tau2), float(c3)
    if via_solstice:
        tau_t = _solstice_tau(surface, c3, north)
        return north * (2.0 * func(surface, tau_t, c3, order, True) - func(surface, tau1, c3, order) - func(surface, tau2, c3, order))
    return north * (func(surface, tau2, c3, order) - func(surface, tau1, c3, order))


def _default_north(tau1, tau2):
    return -1 if tau2 < tau1 else 1


def delta_lambda(surface, tau1, tau2, c3, order=4, north=None, via_solstice=False):
    """Signed longitude difference accumulated from ``tau1`` to ``tau2``.

    ``north`` is the sign of dtau/ds at the start (default: towards
    ``tau2``). With ``via_solstice`` the route first runs to the latitude
    extremum on the ``north`` side and then back to ``tau2``.
    """
    if north is None:
        north = _default_north(tau1, tau2)
    return _combine(lambda_underivative, surface, tau1, tau2, c3, north, via_solstice, order)


def path_length(surface, tau1, tau2, c3, order=4, north=None, via_solstice=False):
    """Arc length between ``tau1`` and ``tau2``; same routing as :func:`delta_lambda`.

    A route that stays on the equator (``tau1 == tau2 == 0`` with
    ``|c3| == H``) is not parametrized by latitude and yields zero here.
    """
    if north is None:
        north = _default_north(tau1, tau2)
    return _combine(distance_underivative, surface, tau1, tau2, c3, north, via_solstice, order)


def wrapped_dlam(boundary):
    """``lam2 - lam1`` reduced to ``[-pi, pi]``."""
    return math.remainder(boundary.lam2 - boundary.lam1, 2.0 * math.pi)


def is_meridian(boundary):
    return abs(math.sin(wrapped_dlam(boundary))) < MERIDIAN_THRESHOLD


def is_equatorial(boundary):
    return boundary.tau1 == 0.0 and boundary.tau2 == 0.0


def _route_candidates(boundary):
    t1, t2 = boundary.tau1, boundary.tau2
    n1 = initial_north_sign(boundary)
    via = n1 != final_north_sign(boundary)
    poleward = t1 if abs(t1) >= abs(t2) else t2
    direct = (_default_north(t1, t2), False)
    via_route = (n1 if via else (-1 if poleward < 0 else 1), True)
    return [via_route, direct] if via else [direct, via_route]


def _bisect(f, lo, flo, hi, tol, max_iter=200):
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol or mid in (lo, hi):
            return mid, fm
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return mid, fm


def _solve_on_route(surface, boundary, dlam, order, north, via, x0, tol, max_iter):
    H = surface.H
    t1, t2 = boundary.tau1, boundary.tau2
    sign = 1.0 if dlam > 0 else -1.0
    xmax = min(math.sqrt((1.0 - t1) * (1.0 + t1)), math.sqrt((1.0 - t2) * (1.0 + t2)))

    def f(x):
        c3 = sign * x * H
        return delta_lambda(surface, t1, t2, c3, order, north, via) - dlam

    # bracket the root nearest to the seed; near xmax the truncated series
    # is unreliable, so sample geometrically towards it
    grid = sorted({xmax * k / 32.0 for k in range(33)} | {xmax * (1.0 - 2.0**-k) for k in range(6, 45)})
    grid[-1] = xmax
    vals = []
    for x in grid:
        try:
            vals.append((x, f(x)))
        except BeyondSolsticeError:
            continue
    brackets = [(a, fa, b, fb) for (a, fa), (b, fb) in zip(vals, vals[1:]) if (fa < 0.0) != (fb < 0.0)]
    if not brackets:
        return None
    lo, flo, hi, fhi = min(brackets, key=lambda br: min(abs(br[0] - x0), abs(br[2] - x0)))
    x = min(max(x0, lo), hi)
    fx = f(x)
    best = (abs(fx), x, fx)
    for _ in range(max_iter):
        if abs(fx) <= tol:
            return sign * x * H, fx
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        dx = 1e-7 * max(x, 1e-3)
        xa, xb = max(lo, x - dx), min(hi, x + dx)
        slope = (f(xb) - f(xa)) / (xb - xa) if xb > xa else 0.0
        nxt = x - fx / slope if slope != 0.0 else float("nan")
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if nxt == x:
            break
        x = nxt
        fx = f(x)
        if abs(fx) < best[0]:
            best = (abs(fx), x, fx)
    if best[0] <= tol:
        return sign * best[1] * H, best[2]
    x, fx = _bisect(f, lo, flo, hi, tol)
    if abs(fx) <= tol:
        return sign * x * H, fx
    raise SolverError("series c3 solve did not converge", best=sign * best[1] * H, residual=best[2])


def solve_c3(surface, boundary, order=4, tolerance=1e-12, max_iter=50):
    """Launching parameter ``c3`` connecting the two boundary points.

    Newton iteration on ``c3/H`` from the great-circle estimate, kept
    inside a sign-change bracket; bisection takes over if Newton stalls.
    Routes through a latitude extremum are tried when the direct route
    cannot reach the requested longitude difference.

    Raises
    ------
    MeridianError
        If both points lie on one meridian (``c3 = 0``).
    DegenerateGeometryError
        For coincident or antipodal endpoints.
    SolverError
        If no route matches within ``max_iter`` iterations.
    """
    _check_order(order)
    dlam = wrapped_dlam(boundary)
    if abs(math.sin(dlam)) < MERIDIAN_THRESHOLD:
        raise MeridianError("endpoints lie on one meridian; the route has c3 = 0")
    b = GeodeticBoundary(boundary.phi1, boundary.lam1, boundary.phi2, boundary.lam1 + dlam)
    if is_equatorial(b):
        return GeodesicParameter(math.copysign(surface.H, dlam), 1, via_solstice=False)
    seed = c3_sphere(b, 1.0)
    candidates = _route_candidates(b)
    north, via = candidates[0]
    try:
        if abs(delta_lambda(surface, b.tau1, b.tau2, seed * surface.H, order, north, via) - dlam) <= tolerance:
            return GeodesicParameter(seed * surface.H, north, via)
    except BeyondSolsticeError:
        pass
    failure = None
    for north, via in candidates:
        try:
            found = _solve_on_route(surface, b, dlam, order, north, via, abs(seed), tolerance, max_iter)
        except SolverError as exc:
            failure = exc
            continue
        if found is not None:
            return GeodesicParameter(found[0], north, via)
    if failure is not None:
        raise failure
    raise SolverError("no route of the truncated series reaches the requested longitude difference")


def _dlam0_dc3(surface, tau, c3, order=0, at_solstice=False):
    # partial derivative of the zeroth-order underivative with respect to c3
    H = surface.H
    q = c3 / H
    T = _solstice_T(surface, tau, c3, at_solstice)
    if T == 0.0:
        return 0.0
    return tau / (H * math.sqrt(T) * (1.0 - q * q))


def _lam2_term(surface, tau, c3, order=0, at_solstice=False):
    H = surface.H
    q = c3 / H
    T = _solstice_T(surface, tau, c3, at_solstice)
    st = math.sqrt(T)
    alg = tau / st if T > 0.0 else 0.0
    return -0.5 * q * (surface.rho_e / H) * (alg + math.atan2(tau, st))


def c3_order2_correction(surface, boundary, c3_0, north=None, via_solstice=False):
    """Coefficient ``c3^(2)`` of ``e^2`` in ``c3 = c3^(0) + c3^(2) e^2 + ...``.

    First-order perturbation of the longitude balance about the spherical
    solution ``c3_0``: the ``e^2`` part of the underivative must be
    cancelled by the change of the zeroth-order term.

    Raises
    ------
    DegenerateGeometryError
        If the zeroth-order term does not depend on ``c3`` between the
        limits.
    """
    t1, t2 = boundary.tau1, boundary.tau2
    if north is None:
        north = _default_north(t1, t2)
    num = _combine(_lam2_term, surface, t1, t2, c3_0, north, via_solstice, 0)
    den = _combine(_dlam0_dc3, surface, t1, t2, c3_0, north, via_solstice, 0)
    if den == 0.0 or not math.isfinite(den):
        raise DegenerateGeometryError("the zeroth-order longitude balance is insensitive to c3")
    return -num / den
