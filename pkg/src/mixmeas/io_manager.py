"""Configuration documents and result files.

A run is described by one TOML document::

    [bodies.A]
    kind = "ellipse"
    a = 2.0
    b = 1.0

    [bodies.L]
    kind = "disk"
    radius = 1.0

    [measure]
    phi = { kind = "power", c = 0.5, p = 2.0 }
    gauge = "L"
    normalized = true

    [roles]
    K = "A"
    M = "L"

    [run]
    t = 2.0
    kind = "first"

Sweep results are written as CSV, comparison reports as JSON.
"""

import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np
import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .common.errors import ConfigError
from .common.utilities import check_file_exists, normalize_string
from .constants import (
    CSV_FLOAT_FORMAT,
    DEFAULT_LINEAR_SWEEP,
    DEFAULT_POWER_SWEEP,
    DEFAULT_SWEEP_POINTS,
    MIXED_TOLERANCE,
    VALID_ROLES,
    VALID_SWEEP_KINDS,
)
from .models.bodies2d import SupportBody2D, body_from_descriptor
from .models.densities import LinearPhi, MeasureSpec, ZeroPhi, normalize, phi_from_descriptor
from .results import ComparisonReport, RateSweep

TOP_LEVEL_TABLES = ("bodies", "measure", "roles", "run")
MEASURE_KEYS = ("phi", "gauge", "normalized", "c0", "debug_zero_density")


def _config_error(message: str) -> ConfigError:
    logging.error(message)
    return ConfigError(message)


@dataclass(frozen=True)
class RunParameters:
    """The ``[run]`` table; every entry can be overridden from the command line.

    Attributes
    ----------
    t : float
        Dilation for single evaluations.
    t_min, t_max : float or None
        Sweep range; the profile-dependent default range is used when unset.
    points : int
        Number of log-spaced sweep points.
    kind : str
        Sweep kind: ``first``, ``second`` or ``gauss``.
    R : float
        Dilation of ``L`` tested by ``compare``.
    tolerance : float
        Relative quadrature tolerance of mixed-measure evaluations.
    out : str or None
        Output file of ``sweep``, ``tail`` and ``compare``; standard output when unset.
    """

    t: float = 2.0
    t_min: float | None = None
    t_max: float | None = None
    points: int = DEFAULT_SWEEP_POINTS
    kind: str = "first"
    R: float = 1.0
    tolerance: float = MIXED_TOLERANCE
    out: str | None = None

    def __post_init__(self):
        for name in ("t", "R", "tolerance"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0 and math.isfinite(value)):
                raise _config_error(f"run.{name}: must be a positive number, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in ("t_min", "t_max"):
            value = getattr(self, name)
            if value is not None:
                if not (isinstance(value, (int, float)) and value > 0):
                    raise _config_error(f"run.{name}: must be a positive number, got {value!r}")
                object.__setattr__(self, name, float(value))
        if self.t_min is not None and self.t_max is not None and self.t_min >= self.t_max:
            raise _config_error(f"run.t_min: must be below run.t_max, got {self.t_min} >= {self.t_max}")
        if isinstance(self.points, bool) or not isinstance(self.points, int) or self.points < 2:
            raise _config_error(f"run.points: must be an integer >= 2, got {self.points!r}")
        kind = normalize_string(str(self.kind))
        if kind not in VALID_SWEEP_KINDS:
            raise _config_error(f"run.kind: '{self.kind}' is not one of {VALID_SWEEP_KINDS}")
        object.__setattr__(self, "kind", kind)

    def sweep_grid(self, measure: MeasureSpec) -> np.ndarray:
        """Log-spaced dilations; the default range is wider for the slowly decaying linear profile."""
        default = DEFAULT_LINEAR_SWEEP if isinstance(measure.phi, LinearPhi) else DEFAULT_POWER_SWEEP
        lo = self.t_min if self.t_min is not None else default[0]
        hi = self.t_max if self.t_max is not None else default[1]
        if lo >= hi:
            raise _config_error(f"run: sweep range [{lo}, {hi}] is empty")
        return np.geomspace(lo, hi, self.points)

    def to_table(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}


@dataclass(frozen=True)
class RunConfig:
    """A fully validated run: named bodies, the measure, role bindings and run parameters."""

    bodies: dict[str, SupportBody2D]
    measure: MeasureSpec
    gauge_name: str
    roles: dict[str, str] = field(default_factory=dict)
    run: RunParameters = field(default_factory=RunParameters)

    def body(self, role: str) -> SupportBody2D:
        """Body bound to a role (``K``, ``M``, ``A``, ``B``, ``C``)."""
        if role not in self.roles:
            raise _config_error(f"roles.{role}: no body bound to this role")
        return self.bodies[self.roles[role]]

    @property
    def gauge_body(self) -> SupportBody2D:
        return self.measure.gauge_body


def _table(document: dict, key: str, required: bool = True) -> dict:
    if key not in document:
        if required:
            raise _config_error(f"{key}: missing required table")
        return {}
    value = document[key]
    if not isinstance(value, dict):
        raise _config_error(f"{key}: expected a table")
    return value


def _parse_measure(table: dict, bodies: dict[str, SupportBody2D]) -> tuple[MeasureSpec, str]:
    unknown = sorted(set(table) - set(MEASURE_KEYS))
    if unknown:
        raise _config_error(f"measure.{unknown[0]}: unknown key")
    if "gauge" not in table:
        raise _config_error("measure.gauge: missing required key")
    gauge_name = str(table["gauge"])
    if gauge_name not in bodies:
        raise _config_error(f"measure.gauge: unknown body '{gauge_name}'")
    gauge_body = bodies[gauge_name]

    debug = table.get("debug_zero_density", False)
    normalized = table.get("normalized", False)
    if not isinstance(debug, bool) or not isinstance(normalized, bool):
        raise _config_error("measure: 'debug_zero_density' and 'normalized' must be booleans")
    if debug:
        if "phi" in table:
            raise _config_error("measure.phi: not allowed together with debug_zero_density")
        phi = ZeroPhi(allow_debug=True)
    else:
        if "phi" not in table:
            raise _config_error("measure.phi: missing required key")
        if not isinstance(table["phi"], dict):
            raise _config_error("measure.phi: expected an inline table")
        phi = phi_from_descriptor(table["phi"], "measure.phi")

    if normalized and "c0" not in table:
        return normalize(MeasureSpec(phi, gauge_body)), gauge_name
    c0 = table.get("c0", 1.0)
    if isinstance(c0, bool) or not isinstance(c0, (int, float)):
        raise _config_error(f"measure.c0: expected a number, got {c0!r}")
    return MeasureSpec(phi, gauge_body, float(c0), normalized), gauge_name


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document.

    Args:
        text (str): TOML document.

    Returns:
        RunConfig: Bodies constructed, measure constructed and validated, roles resolved.

    Raises:
        ConfigError: Syntax errors, unknown or missing keys, unresolved body names.
        BodyValidationError: Invalid body parameters (for example a clockwise polygon).
        PhiValidationError: Invalid profile parameters.
    """
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as err:
        raise _config_error(f"configuration syntax error: {err}") from err

    unknown = sorted(set(document) - set(TOP_LEVEL_TABLES))
    if unknown:
        raise _config_error(f"{unknown[0]}: unknown table")

    bodies_table = _table(document, "bodies")
    if not bodies_table:
        raise _config_error("bodies: at least one body is required")
    bodies = {}
    for name, descriptor in bodies_table.items():
        if not isinstance(descriptor, dict):
            raise _config_error(f"bodies.{name}: expected a table")
        bodies[name] = body_from_descriptor(descriptor, f"bodies.{name}")

    measure, gauge_name = _parse_measure(_table(document, "measure"), bodies)

    roles = {}
    for role, name in _table(document, "roles", required=False).items():
        if role not in VALID_ROLES:
            raise _config_error(f"roles.{role}: unknown role, expected one of {VALID_ROLES}")
        if name not in bodies:
            raise _config_error(f"roles.{role}: unknown body '{name}'")
        roles[role] = str(name)

    run_table = _table(document, "run", required=False)
    known = {f.name for f in fields(RunParameters)}
    extra = sorted(set(run_table) - known)
    if extra:
        raise _config_error(f"run.{extra[0]}: unknown key")
    run = RunParameters(**run_table)

    logging.debug(f"Parsed configuration with bodies {sorted(bodies)} and roles {roles}")
    return RunConfig(bodies, measure, gauge_name, roles, run)


def load_config(path) -> RunConfig:
    """Read and parse a configuration file.

    Raises:
        FileNotFoundError: If the file does not exist (logged first).
    """
    path = check_file_exists(path, "configuration")
    logging.info(f"Loading configuration {path}...")
    with open(path, encoding="utf-8") as handle:
        return parse_config(handle.read())


def serialize_config(config: RunConfig) -> str:
    """Write a configuration back to TOML; parsing the result gives an equal :class:`RunConfig`."""
    measure: dict = {
        "gauge": config.gauge_name,
        "normalized": config.measure.normalized,
        "c0": config.measure.c0,
    }
    if config.measure.is_debug:
        measure["debug_zero_density"] = True
    else:
        measure["phi"] = config.measure.phi.to_descriptor()
    document = {
        "bodies": {name: body.to_descriptor() for name, body in config.bodies.items()},
        "measure": measure,
        "roles": dict(config.roles),
        "run": config.run.to_table(),
    }
    return tomli_w.dumps(document)


def export_sweep_csv(sweep: RateSweep, destination) -> None:
    """Write a sweep as CSV (``t,sign,log_abs,ratio,phi_rt,nodes`` plus the corrected ratio
    for second-order sweeps) with 17 significant digits.

    Args:
        sweep (RateSweep): The sweep.
        destination: File path or writable text stream.
    """
    if isinstance(destination, (str, os.PathLike)):
        directory = os.path.dirname(os.fspath(destination))
        if directory:
            os.makedirs(directory, exist_ok=True)
        logging.info(f"Saving {sweep.kind} sweep to {os.fspath(destination)}...")
    sweep.to_dataframe().to_csv(destination, index=False, float_format=CSV_FLOAT_FORMAT)


def export_report_json(report: ComparisonReport, destination) -> None:
    """Write a comparison report as JSON (sorted keys, NaN as null)."""
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if isinstance(destination, (str, os.PathLike)):
        directory = os.path.dirname(os.fspath(destination))
        if directory:
            os.makedirs(directory, exist_ok=True)
        logging.info(f"Saving comparison report to {os.fspath(destination)}...")
        with open(destination, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        destination.write(text + "\n")
