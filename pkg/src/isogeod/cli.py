"""Command-line front end.

Usage::

    isogeod [-h altitude] [-s steps] [-u undersample] [-R radius] [-e eccentricity]
            [-r | -g] [-2] [--solver {shooting,series,both}]
            [--format {columns,structured}] phi1 lam1 phi2 lam2

Angles are read in degrees unless ``-r`` (radians) or ``-g`` (gons) is
given. Comment lines start with ``#``; every other line of the columns
format holds ``x y z lambda phi kappa s`` for one trajectory point, with
angles in the input unit and lengths in the unit of the radius.

Exit status is 0 on success, 1 for usage errors and 2 when the solver
fails (including degenerate geometry).
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass

from .ellipsoid import PRESETS, EllipsoidSurface, GeodeticBoundary, eccentricity_flattening_convert
from .errors import DomainError, GeodesicError
from .inverse import solve_inverse
from .shooting import ShootingConfig, adjust_lambda_end

ANGLE_UNITS = ("deg", "rad", "gon")
SOLVER_CHOICES = ("shooting", "series", "both")
OUTPUT_CHOICES = ("columns", "structured")

EXIT_OK, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2

USAGE = (
    "usage: isogeod [-h altitude] [-s steps] [-u undersample] [-R radius] [-e eccentricity]\n"
    "               [-r | -g] [-2] [--solver {shooting,series,both}]\n"
    "               [--format {columns,structured}] phi1 lam1 phi2 lam2"
)


class UsageError(Exception):
    """Bad command line."""


@dataclass(frozen=True)
class RunConfig:
    surface: EllipsoidSurface
    boundary: GeodeticBoundary
    n_steps: int = 400
    undersample: int = 10
    taylor_order: int = 3
    angle_unit: str = "deg"
    solver: str = "shooting"
    output: str = "columns"

    @property
    def shooting(self):
        return ShootingConfig(self.n_steps, self.taylor_order, self.undersample)


# units ------------------------------------------------------------------


def to_radians(value, unit):
    if unit == "deg":
        return math.radians(value)
    if unit == "gon":
        return math.radians(360.0 * value / 400.0)
    if unit == "rad":
        return value
    raise DomainError(f"unknown angle unit {unit!r}")


def from_radians(value, unit):
    if unit == "deg":
        return math.degrees(value)
    if unit == "gon":
        return 10.0 * math.degrees(value) / 9.0
    if unit == "rad":
        return value
    raise DomainError(f"unknown angle unit {unit!r}")


def format_number(x):
    """Shortest round-trip decimal; integral values without a fraction, ``-0`` as ``0``."""
    x = float(x)
    if x == 0.0:
        return "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


# parsing ----------------------------------------------------------------


def _float(tok, what):
    try:
        val = float(tok)
    except (TypeError, ValueError):
        raise UsageError(f"{what}: cannot parse {tok!r} as a number") from None
    if not math.isfinite(val):
        raise UsageError(f"{what}: {tok!r} is not finite")
    return val


def _int(tok, what):
    try:
        return int(tok)
    except (TypeError, ValueError):
        raise UsageError(f"{what}: cannot parse {tok!r} as an integer") from None


_VALUE_FLAGS = {"-h": "altitude", "-s": "steps", "-u": "undersample", "-R": "radius", "-e": "eccentricity"}


def parse_args(argv):
    """Build a :class:`RunConfig` from command-line tokens.

    Flags are matched literally; the first token that is not a flag starts
    the block of four positional angles, so negative angles need no
    quoting (only a leading ``-2`` would be read as the order flag).

    Raises
    ------
    UsageError
        For unknown flags, missing values or positionals, bad numbers and
        out-of-range surface parameters.
    """
    argv = list(argv)
    rho, inv_f = PRESETS["WGS84"]
    opts = {"altitude": 0.0, "steps": 400, "undersample": 10, "radius": rho, "eccentricity": None}
    unit, order, solver, output = "deg", 3, "shooting", "columns"
    angles = None
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS:
            if i + 1 >= len(argv):
                raise UsageError(f"option {tok} needs a value")
            name = _VALUE_FLAGS[tok]
            conv = _int if name in ("steps", "undersample") else _float
            opts[name] = conv(argv[i + 1], tok)
            i += 2
            continue
        if tok == "-r":
            unit = "rad"
        elif tok == "-g":
            unit = "gon"
        elif tok == "-2":
            order = 2
        elif tok.startswith("--solver") or tok.startswith("--format"):
            key, _, val = tok.partition("=")
            if not val:
                if i + 1 >= len(argv):
                    raise UsageError(f"option {key} needs a value")
                i += 1
                val = argv[i]
            choices = SOLVER_CHOICES if key == "--solver" else OUTPUT_CHOICES
            if key not in ("--solver", "--format") or val not in choices:
                raise UsageError(f"{key}: expected one of {', '.join(choices)}, got {val!r}")
            if key == "--solver":
                solver = val
            else:
                output = val
        elif tok.startswith("-") and len(tok) > 1 and not _looks_numeric(tok):
            raise UsageError(f"unknown option {tok!r}")
        else:
            if angles is not None:
                raise UsageError("the four angles were given twice")
            block = argv[i : i + 4]
            if len(block) < 4:
                raise UsageError("expected four angles: phi1 lam1 phi2 lam2")
            angles = [_float(t, "angle") for t in block]
            i += 4
            continue
        i += 1
    if angles is None:
        raise UsageError("expected four angles: phi1 lam1 phi2 lam2")
    e = opts["eccentricity"]
    if e is None:
        e = eccentricity_flattening_convert(1.0 / inv_f)
    try:
        surface = EllipsoidSurface(opts["radius"], e, opts["altitude"])
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    phi1, lam1, phi2, lam2 = (to_radians(a, unit) for a in angles)
    if abs(phi1) > 0.5 * math.pi or abs(phi2) > 0.5 * math.pi:
        raise UsageError("latitudes must lie within [-90, 90] degrees")
    boundary = GeodeticBoundary(phi1, lam1, phi2, adjust_lambda_end(lam1, lam2))
    config = RunConfig(surface, boundary, opts["steps"], opts["undersample"], order, unit, solver, output)
    try:
        config.shooting
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return config


def _looks_numeric(tok):
    try:
        float(tok)
    except ValueError:
        return False
    return True


# output -----------------------------------------------------------------


def sample_fields(sample, angle_unit):
    x, y, z = (float(c) for c in sample.cartesian)
    return {
        "x": x,
        "y": y,
        "z": z,
        "lambda": from_radians(sample.lam, angle_unit),
        "phi": from_radians(sample.phi, angle_unit),
        "kappa": from_radians(sample.kappa, angle_unit),
        "s": float(sample.s),
    }


def format_sample(sample, angle_unit="deg"):
    """Seven blank-separated columns ``x y z lambda phi kappa s``."""
    return " ".join(format_number(v) for v in sample_fields(sample, angle_unit).values())


class _Writer:
    def __init__(self, config, out):
        self.structured = config.output == "structured"
        self.unit = config.angle_unit
        self.out = out

    def comment(self, text, **record):
        if self.structured:
            if record:
                self.out.write(json.dumps(record) + "\n")
        else:
            self.out.write("# " + text + "\n")

    def sample(self, sample, solver):
        if self.structured:
            rec = {"type": "sample", "solver": solver}
            rec.update(sample_fields(sample, self.unit))
            self.out.write(json.dumps(rec) + "\n")
        else:
            self.out.write(format_sample(sample, self.unit) + "\n")


def _header(config, w):
    s, b = config.surface, config.boundary
    inv_f = 1.0 / s.f if s.e > 0.0 else math.inf
    w.comment(
        f"equat Radius {format_number(s.rho_e)}, eccentricity {format_number(s.e)}, altitude {format_number(s.h)}",
        type="surface", radius=s.rho_e, eccentricity=s.e, altitude=s.h,
    )
    w.comment(f"inverse flattening {format_number(inv_f) if math.isfinite(inv_f) else 'inf'}")
    ang = (b.phi1, b.lam1, b.phi2, b.lam2)
    w.comment("start {} rad, {} rad; end {} rad, {} rad".format(*map(format_number, ang)))
    u = config.angle_unit
    if u != "rad":
        conv = [format_number(from_radians(a, u)) for a in ang]
        w.comment(f"start {conv[0]} {u}, {conv[1]} {u}; end {conv[2]} {u}, {conv[3]} {u}")
    w.comment(
        f"{config.n_steps} elements, Taylor order {config.taylor_order}",
        type="boundary", unit=u, phi1=from_radians(b.phi1, u), lam1=from_radians(b.lam1, u),
        phi2=from_radians(b.phi2, u), lam2=from_radians(b.lam2, u),
        n_steps=config.n_steps, undersample=config.undersample, taylor_order=config.taylor_order,
    )


def _report(config, sol, w):
    p = sol.parameter
    w.comment(f"solver {sol.method}, north {p.north}, via solstice {'yes' if p.via_solstice else 'no'}")
    if sol.samples:
        k0 = sol.samples[0].kappa
        w.comment(f"start course {format_number(k0)} rad, {format_number(math.degrees(k0))} deg")
    for smp in sol.samples:
        w.sample(smp, sol.method)
    w.comment(f"length {format_number(sol.length)}")
    w.comment(
        f"c3 {format_number(p.c3)} err {format_number(sol.endpoint_error)}",
        type="result", solver=sol.method, c3=float(p.c3), endpoint_error=float(sol.endpoint_error),
        length=float(sol.length), north=p.north, via_solstice=bool(p.via_solstice),
    )


def run_inverse(config, out=None, err=None):
    """Solve the configured problem and write the report.

    Returns
    -------
    int
        0 on success, 2 if a solver fails.
    """
    out = out or sys.stdout
    err = err or sys.stderr
    w = _Writer(config, out)
    _header(config, w)
    methods = ("series", "shooting") if config.solver == "both" else (config.solver,)
    lengths = []
    for method in methods:
        try:
            sol = solve_inverse(config.surface, config.boundary, method, config.shooting)
        except GeodesicError as exc:
            err.write(f"isogeod: {method} solver failed: {type(exc).__name__}: {exc}\n")
            return EXIT_SOLVER
        _report(config, sol, w)
        lengths.append(sol.length)
    if len(lengths) == 2:
        rel = abs(lengths[1] - lengths[0]) / max(abs(lengths[0]), 1e-300)
        w.comment(f"relative length difference {format_number(rel)}", type="comparison", relative_length_difference=rel)
    return EXIT_OK


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if "--help" in argv:
        print(USAGE)
        return EXIT_OK
    try:
        config = parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"isogeod: {exc}\n{USAGE}\n")
        return EXIT_USAGE
    return run_inverse(config)
