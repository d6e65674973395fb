"""Biaxial ellipsoid and the surface of constant altitude above it.

Latitudes are carried as ``tau = sin(phi)`` throughout; every radius of
curvature and fundamental form is algebraic in ``tau``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

#: name -> (equatorial radius [m], inverse flattening)
PRESETS = {
    "WGS84": (6378137.0, 298.257223563),
    "GRS80": (6378137.0, 298.257222101),
    "IERS-TN32": (6378136.6, 298.25642),
    "IERS-TN21": (6378136.49, 298.25642),
}


def eccentricity_flattening_convert(value, to="eccentricity"):
    """Convert between flattening ``f`` and first eccentricity ``e``.

    Parameters
    ----------
    value : float
        The flattening (when ``to="eccentricity"``) or the eccentricity
        (when ``to="flattening"``). Must lie in ``[0, 1)``.
    to : {"eccentricity", "flattening"}
        Target quantity.

    Returns
    -------
    float
        ``e = sqrt(f (2 - f))`` or ``f = 1 - sqrt(1 - e**2)``.
    """
    if not 0.0 <= value < 1.0:
        raise DomainError(f"value must lie in [0, 1), got {value!r}")
    if to == "eccentricity":
        return math.sqrt(value * (2.0 - value))
    if to == "flattening":
        e2 = value * value
        # 1 - sqrt(1 - e2) without cancellation for small e
        return e2 / (1.0 + math.sqrt((1.0 - value) * (1.0 + value)))
    raise ValueError(f"unknown conversion target {to!r}")


def _third_flattening_m(e):
    e2 = e * e
    return e2 / (2.0 - e2)


def latitude_difference_coefficients(e, terms=3):
    """Fourier coefficients of ``v = phi - phi'`` in ``sin(2 k phi)``.

    The k-th coefficient is ``(-1)**(k+1) m**k / k`` with ``m = e^2/(2-e^2)``.
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    m = _third_flattening_m(e)
    k = np.arange(1, terms + 1)
    return (-1.0) ** (k + 1) * m**k / k


def latitude_difference_v(phi, e, terms=3):
    """Geodetic minus geocentric latitude as a truncated Fourier series."""
    coeffs = latitude_difference_coefficients(e, terms)
    phi = np.asarray(phi, dtype=float)
    k = np.arange(1, terms + 1)
    v = np.sum(coeffs * np.sin(2.0 * np.multiply.outer(phi, k)), axis=-1)
    return float(v) if v.ndim == 0 else v


def latitude_difference_exact(phi, e):
    """Closed form ``tan v = e^2 sin(2 phi) / (2 (1 - e^2 sin^2 phi))``."""
    e2 = e * e
    s = np.sin(phi)
    return np.arctan2(e2 * np.sin(2.0 * phi), 2.0 * (1.0 - e2 * s * s))


class GeodeticPosition(NamedTuple):
    """A point given by ``tau = sin(phi)`` and longitude ``lam`` [rad]."""

    tau: float
    lam: float

    @classmethod
    def from_phi(cls, phi, lam):
        return cls(math.sin(phi), lam)

    @property
    def phi(self):
        return math.asin(self.tau)


@dataclass(frozen=True)
class GeodeticBoundary:
    """Start and end point of the inverse problem, angles in radians."""

    phi1: float
    lam1: float
    phi2: float
    lam2: float

    @classmethod
    def from_degrees(cls, phi1, lam1, phi2, lam2):
        return cls(*(math.radians(a) for a in (phi1, lam1, phi2, lam2)))

    @property
    def tau1(self):
        return math.sin(self.phi1)

    @property
    def tau2(self):
        return math.sin(self.phi2)

    @property
    def dlam(self):
        return self.lam2 - self.lam1

    def reversed(self):
        return GeodeticBoundary(self.phi2, self.lam2, self.phi1, self.lam1)


@dataclass(frozen=True)
class EllipsoidSurface:
    """Iso-altitude surface at height ``h`` over a biaxial ellipsoid.

    Parameters
    ----------
    rho_e : float
        Equatorial radius [m].
    e : float
        First eccentricity, ``0 <= e < 1``.
    h : float
        Altitude above the ellipsoid [m]. Negative values are allowed as
        long as the surface stays outside the polar radius of curvature
        collapse, ``h > -rho_e (1 - e^2)``.
    """

    rho_e: float
    e: float
    h: float = 0.0

    def __post_init__(self):
        if not (self.rho_e > 0.0 and math.isfinite(self.rho_e)):
            raise DomainError(f"rho_e must be positive, got {self.rho_e!r}")
        if not 0.0 <= self.e < 1.0:
            raise DomainError(f"eccentricity must lie in [0, 1), got {self.e!r}")
        if not math.isfinite(self.h) or self.h <= -self.rho_e * (1.0 - self.e**2):
            raise DomainError(
                f"altitude {self.h!r} collapses the surface (limit {-self.rho_e * (1.0 - self.e**2)!r})"
            )

    @classmethod
    def preset(cls, name="WGS84", h=0.0):
        rho_e, inv_f = PRESETS[name]
        return cls.from_flattening(rho_e, 1.0 / inv_f, h)

    @classmethod
    def from_flattening(cls, rho_e, f, h=0.0):
        return cls(rho_e, eccentricity_flattening_convert(f, "eccentricity"), h)

    def scaled(self, k):
        """Same shape with all lengths multiplied by ``k``."""
        return EllipsoidSurface(self.rho_e * k, self.e, self.h * k)

    def with_altitude(self, h):
        return EllipsoidSurface(self.rho_e, self.e, h)

    @property
    def e2(self):
        return self.e * self.e

    @property
    def rho_p(self):
        return self.rho_e * math.sqrt((1.0 - self.e) * (1.0 + self.e))

    @property
    def H(self):
        """Largest distance of the surface to the polar axis, ``rho_e + h``."""
        return self.rho_e + self.h

    @property
    def m(self):
        return _third_flattening_m(self.e)

    @property
    def f(self):
        return eccentricity_flattening_convert(self.e, "flattening")

    # radii of curvature -------------------------------------------------

    def _q(self, tau):
        # 1 - e^2 tau^2, factored for accuracy near |e tau| = 1
        et = self.e * tau
        return (1.0 + et) * (1.0 - et)

    def radius_N(self, tau):
        """Prime-vertical radius of curvature ``rho_e / sqrt(1 - e^2 tau^2)``."""
        return self.rho_e / np.sqrt(self._q(tau))

    def radius_M(self, tau):
        """Meridional radius of curvature ``N (1 - e^2) / (1 - e^2 tau^2)``."""
        q = self._q(tau)
        return self.rho_e * (1.0 - self.e2) / (q * np.sqrt(q))

    def curvature_derivatives(self, tau):
        """Return ``(dN/dtau, dM/dtau, d2M/dtau2)``."""
        q = self._q(tau)
        e2 = self.e2
        N = self.radius_N(tau)
        M = self.radius_M(tau)
        dN = N * e2 * tau / q
        dM = 3.0 * M * e2 * tau / q
        d2M = 3.0 * M * e2 * (1.0 + 4.0 * e2 * tau * tau) / (q * q)
        return dN, dM, d2M

    # coordinates ----------------------------------------------------------

    def to_cartesian(self, tau, lam):
        """Cartesian position of ``(tau, lam)`` on the surface."""
        N = self.radius_N(tau)
        cphi = math.sqrt((1.0 - tau) * (1.0 + tau))
        r = (N + self.h) * cphi
        return np.array([r * math.cos(lam), r * math.sin(lam), (N * (1.0 - self.e2) + self.h) * tau])

    def from_cartesian(self, xyz, tol=1e-15, max_iter=50):
        """Iterative inverse of :meth:`to_cartesian`.

        Returns ``(phi, lam, h)``; ``h`` is the altitude of the point
        above the underlying ellipsoid, not relative to this surface.
        """
        x, y, z = (float(c) for c in xyz)
        p = math.hypot(x, y)
        lam = math.atan2(y, x)
        e2 = self.e2
        phi = math.atan2(z, p * (1.0 - e2))
        h = 0.0
        for _ in range(max_iter):
            s = math.sin(phi)
            N = float(self.radius_N(s))
            if abs(s) < 0.7:
                h = p / math.cos(phi) - N
            else:
                h = z / s - N * (1.0 - e2)
            new = math.atan2(z, p * (1.0 - e2 * N / (N + h)))
            if abs(new - phi) <= tol:
                phi = new
                break
            phi = new
        return phi, lam, h

    def topocentric_basis(self, tau, lam):
        """Tangent vectors ``(e_lambda, e_phi)`` at ``(tau, lam)``.

        At the poles ``e_lambda`` is the zero vector.
        """
        N = self.radius_N(tau)
        M = self.radius_M(tau)
        cphi = math.sqrt((1.0 - tau) * (1.0 + tau))
        cl, sl = math.cos(lam), math.sin(lam)
        r = (N + self.h) * cphi
        e_lam = np.array([-r * sl, r * cl, 0.0])
        Mh = M + self.h
        e_phi = np.array([-tau * cl * Mh, -tau * sl * Mh, cphi * Mh])
        return e_lam, e_phi
