"""Inverse geodesic problem on a surface of constant altitude over a biaxial ellipsoid.

Two solvers are provided: a truncated eccentricity series
(:mod:`isogeod.series`) and a finite-element shooting integrator
(:mod:`isogeod.shooting`). :func:`solve_inverse` dispatches between them.
"""

from .core import GeodesicParameter, TrajectoryState, nautical_angle, tau_tropic, unit_speed_residual
from .ellipsoid import EllipsoidSurface, GeodeticBoundary, GeodeticPosition
from .errors import (
    BeyondSolsticeError,
    DegenerateGeometryError,
    DomainError,
    GeodesicError,
    IntegrationError,
    MeridianError,
    NoSolsticeError,
    PoleSingularityError,
    SolverError,
)
from .inverse import InverseSolution, solve_inverse
from .series import path_length, solve_c3
from .shooting import ShootingConfig, c3_shoot, tau_shoot
from .spherical import c3_sphere, central_angle

__version__ = "0.1.0"

__all__ = [
    "BeyondSolsticeError",
    "DegenerateGeometryError",
    "DomainError",
    "EllipsoidSurface",
    "GeodesicError",
    "GeodesicParameter",
    "GeodeticBoundary",
    "GeodeticPosition",
    "IntegrationError",
    "InverseSolution",
    "MeridianError",
    "NoSolsticeError",
    "PoleSingularityError",
    "ShootingConfig",
    "SolverError",
    "TrajectoryState",
    "c3_shoot",
    "c3_sphere",
    "central_angle",
    "nautical_angle",
    "path_length",
    "solve_c3",
    "solve_inverse",
    "tau_shoot",
    "tau_tropic",
    "unit_speed_residual",
]
