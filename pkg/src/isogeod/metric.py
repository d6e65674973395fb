"""First fundamental form and Christoffel symbols of the iso-altitude surface.

Coordinates are ``(lambda, phi)``. ``F`` vanishes identically and four of
the eight Christoffel symbols are zero; only the nonzero three are kept.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import PoleSingularityError


class FundamentalForms(NamedTuple):
    E: float
    F: float
    G: float


class ChristoffelSet(NamedTuple):
    """Nonzero connection coefficients.

    ``gamma_phi_ll`` is Gamma^phi_{lambda lambda}, ``gamma_lambda_pl`` is
    Gamma^lambda_{phi lambda} (= Gamma^lambda_{lambda phi}) and
    ``gamma_phi_pp`` is Gamma^phi_{phi phi}.
    """

    gamma_phi_ll: float
    gamma_lambda_pl: float
    gamma_phi_pp: float


def gauss_E(surface, tau):
    Nh = surface.radius_N(tau) + surface.h
    return Nh * Nh * (1.0 - tau) * (1.0 + tau)


def gauss_G(surface, tau):
    Mh = surface.radius_M(tau) + surface.h
    return Mh * Mh


def fundamental_forms(surface, tau):
    """``E = (N+h)^2 (1-tau^2)``, ``F = 0``, ``G = (M+h)^2``."""
    return FundamentalForms(gauss_E(surface, tau), 0.0, gauss_G(surface, tau))


def fundamental_form_derivatives(surface, tau):
    """Return ``(dE/dtau, d2E/dtau2)``."""
    Nh = surface.radius_N(tau) + surface.h
    Mh = surface.radius_M(tau) + surface.h
    dN, dM, _ = surface.curvature_derivatives(tau)
    dE = -2.0 * tau * Nh * Mh
    d2E = -2.0 * (Nh * Mh + tau * dN * Mh + tau * Nh * dM)
    return dE, d2E


def christoffel(surface, tau):
    """Nonzero Christoffel symbols at latitude ``tau``.

    Raises
    ------
    PoleSingularityError
        At ``|tau| == 1``, where Gamma^lambda_{phi lambda} has ``cos(phi)``
        in the denominator.
    """
    if abs(tau) >= 1.0:
        raise PoleSingularityError("Christoffel symbols are singular at the poles")
    cphi = math.sqrt((1.0 - tau) * (1.0 + tau))
    Nh = surface.radius_N(tau) + surface.h
    M = surface.radius_M(tau)
    Mh = M + surface.h
    et = surface.e * tau
    q = (1.0 + et) * (1.0 - et)
    g_phi_ll = Nh * cphi * tau / Mh
    g_lam_pl = -tau * Mh / (Nh * cphi)
    g_phi_pp = 3.0 * M * surface.e2 * tau * cphi / (q * Mh)
    return ChristoffelSet(float(g_phi_ll), float(g_lam_pl), float(g_phi_pp))
