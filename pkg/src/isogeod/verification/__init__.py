"""Reference solutions used to cross-check the production solvers."""

from .elliptic import (
    ModularAngle,
    carlson_rc,
    carlson_rd,
    carlson_rf,
    carlson_rj,
    delta_lambda_h0,
    distance_h0,
    elliptic_e,
    elliptic_pi,
    longitude_h0,
    path_length_h0,
    solve_inverse_h0,
    symmetric_elliptic,
)

__all__ = [
    "ModularAngle",
    "carlson_rc",
    "carlson_rd",
    "carlson_rf",
    "carlson_rj",
    "delta_lambda_h0",
    "distance_h0",
    "elliptic_e",
    "elliptic_pi",
    "longitude_h0",
    "path_length_h0",
    "solve_inverse_h0",
    "symmetric_elliptic",
]
