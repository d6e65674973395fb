"""One entry point for the inverse problem.

Dispatches to the series or the shooting solver and covers the two cases
neither of them parametrizes: meridian pairs (``c3 = 0``, longitude is
not a valid mesh variable) and equatorial pairs (the equator itself).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.integrate import quad

from . import series
from .core import GeodesicParameter, discriminant_T
from .ellipsoid import GeodeticBoundary
from .errors import DomainError
from .shooting import ShootingConfig, TrajectorySample, adjust_lambda_end, c3_shoot, tau_shoot
from .spherical import c3_sphere

SOLVERS = ("series", "shooting")


@dataclass(frozen=True)
class InverseSolution:
    """Launching parameter, length and (for shooting) the sampled trajectory.

    ``endpoint_error`` is ``tau_end - sin(phi2)`` for shooting and the
    longitude residual [rad] for the series solver.
    """

    parameter: GeodesicParameter
    length: float
    method: str
    endpoint_error: float = 0.0
    samples: list = field(default_factory=list)

    @property
    def c3(self):
        return self.parameter.c3


def meridian_arc(surface, phi1, phi2):
    """Length along one meridian between two latitudes, by quadrature of ``M + h``."""
    val, _ = quad(lambda p: float(surface.radius_M(math.sin(p))) + surface.h, phi1, phi2, epsabs=0.0, epsrel=1e-13, limit=200)
    return abs(val)


def _meridian_route(boundary):
    # latitude breakpoints: same meridian, or across a pole for dlam = pi
    dlam = series.wrapped_dlam(boundary)
    p1, p2 = boundary.phi1, boundary.phi2
    if abs(dlam) < 1.0:
        return [(p1, p2)]
    pole = math.copysign(0.5 * math.pi, p1 + p2) if p1 + p2 != 0.0 else 0.5 * math.pi
    return [(p1, pole), (pole, p2)]


def _meridian_samples(surface, boundary, config):
    legs = _meridian_route(boundary)
    lam2 = boundary.lam1 + series.wrapped_dlam(boundary)
    n = int(config.n_steps)
    total = sum(abs(b - a) for a, b in legs)
    out = []
    s_done = 0.0
    k = 0
    for leg, (a, b) in enumerate(legs):
        lam = boundary.lam1 if leg == 0 else lam2
        kappa = 0.0 if b > a else math.pi
        m = max(1, round(n * abs(b - a) / total)) if total > 0.0 else 1
        for j in range(m + 1):
            if leg > 0 and j == 0:
                continue
            phi = a + (b - a) * j / m
            s = s_done + meridian_arc(surface, a, phi)
            if k % config.undersample == 0 or (leg == len(legs) - 1 and j == m):
                out.append(TrajectorySample(surface.to_cartesian(math.sin(phi), lam), lam, phi, kappa, s, 1 if b > a else -1))
            k += 1
        s_done += meridian_arc(surface, a, b)
    return out, s_done


def _endpoint_samples(surface, boundary, param, length):
    lam2 = adjust_lambda_end(boundary.lam1, boundary.lam2)
    n1 = param.north
    n2 = -n1 if param.via_solstice else n1
    out = []
    for phi, lam, north, s in ((boundary.phi1, boundary.lam1, n1, 0.0), (boundary.phi2, lam2, n2, length)):
        tau = math.sin(phi)
        T = max(0.0, discriminant_T(surface, tau, param.c3)[0])
        kappa = math.atan2(param.c3 / (float(surface.radius_N(tau)) + surface.h), north * math.sqrt(T))
        out.append(TrajectorySample(surface.to_cartesian(tau, lam), lam, phi, kappa, s, north))
    return out


def solve_inverse(surface, boundary, method="shooting", config=None, order=4):
    """Solve the inverse problem between the two boundary points.

    Parameters
    ----------
    method : {"shooting", "series"}
        Shooting returns the sampled trajectory; the series solver only
        samples the two endpoints.
    config : ShootingConfig, optional
        Mesh settings (also used for meridian sampling).
    order : {0, 2, 4}
        Series order.

    Raises
    ------
    DegenerateGeometryError
        For coincident or antipodal endpoints.
    """
    if method not in SOLVERS:
        raise DomainError(f"unknown solver {method!r}; expected one of {SOLVERS}")
    config = config or ShootingConfig()
    # validates the geometry (coincident / antipodal) for every path below
    c3_sphere(boundary, surface.H)
    if series.is_meridian(boundary):
        samples, length = _meridian_samples(surface, boundary, config)
        legs = _meridian_route(boundary)
        north = 1 if legs[0][1] >= legs[0][0] else -1
        param = GeodesicParameter(0.0, north, len(legs) > 1)
        return InverseSolution(param, length, "meridian", 0.0, samples)
    if series.is_equatorial(boundary):
        dlam = series.wrapped_dlam(boundary)
        param = GeodesicParameter(math.copysign(surface.H, dlam), 1, False)
        length = surface.H * abs(dlam)
        if method == "series":
            return InverseSolution(param, length, "equator", 0.0, _endpoint_samples(surface, boundary, param, length))
        samples, err = tau_shoot(surface, boundary, param.c3, config)
        return InverseSolution(param, samples[-1].s, "equator", err, samples)
    if method == "series":
        param = series.solve_c3(surface, boundary, order)
        b = GeodeticBoundary(boundary.phi1, boundary.lam1, boundary.phi2, boundary.lam1 + series.wrapped_dlam(boundary))
        resid = series.delta_lambda(surface, b.tau1, b.tau2, param.c3, order, param.north, param.via_solstice) - series.wrapped_dlam(b)
        length = series.path_length(surface, b.tau1, b.tau2, param.c3, order, param.north, param.via_solstice)
        return InverseSolution(param, length, "series", resid, _endpoint_samples(surface, boundary, param, length))
    param = c3_shoot(surface, boundary, config)
    samples, err = tau_shoot(surface, boundary, param.c3, config)
    return InverseSolution(param, samples[-1].s, "shooting", err, samples)


__all__ = ["InverseSolution", "SOLVERS", "meridian_arc", "solve_inverse"]
