"""Exception hierarchy for the geodesic solvers."""


class GeodesicError(Exception):
    """Base class for all errors raised by :mod:`isogeod`."""


class DomainError(GeodesicError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleSingularityError(GeodesicError):
    """Evaluation at a pole where longitude is not a valid coordinate."""


class BeyondSolsticeError(GeodesicError):
    """The latitude is not reachable for the given launching parameter.

    Raised when the discriminant under the square root of dtau/ds is negative.
    """

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class NoSolsticeError(GeodesicError):
    """The solstice quartic has no root in [0, 1]."""


class MeridianError(GeodesicError):
    """Longitude cannot parametrize a meridian (c3 == 0)."""


class DegenerateGeometryError(GeodesicError):
    """Coincident or antipodal endpoints, or an otherwise ill-posed boundary."""


class SolverError(GeodesicError):
    """An iterative solver failed to converge.

    Attributes
    ----------
    best : float or None
        Best parameter value found before giving up.
    residual : float or None
        Residual at ``best``.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class IntegrationError(GeodesicError):
    """The finite-element march left the reachable latitude band."""

    def __init__(self, message, last_lambda=None):
        super().__init__(message)
        self.last_lambda = last_lambda
