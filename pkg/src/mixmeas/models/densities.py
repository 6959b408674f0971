"""Density profiles ``phi`` and measures with density ``c0 * exp(-phi(||x||_L))``.

Polar-coordinate masses reduce to the one-dimensional kernels

    Psi(x)      = integral_0^x  s exp(-phi(s)) ds
    Psi_tail(x) = integral_x^oo s exp(-phi(s)) ds

which are closed-form (incomplete gamma functions) for the power and linear
profiles and use Gauss-Legendre panels for the exponential profile.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import special

from ..common.errors import ConfigError, DomainError, PhiValidationError, PreconditionError
from ..common.utilities import normalize_string
from ..constants import (
    CONVEXITY_TOLERANCE,
    GAMMA_TAIL_SWITCH,
    NORMALIZATION_TOLERANCE,
    RADIAL_PANEL_ORDER,
    RADIAL_PANELS,
    RADIAL_TAIL_EXPONENT,
    VALID_PHI_KINDS,
)
from ..quadrature import line_integrate
from .bodies2d import Disk, SupportBody2D


class PhiFunction(ABC):
    """Convex, nondecreasing, non-constant profile ``phi: [0, oo) -> [0, oo)``."""

    kind: str = ""

    @abstractmethod
    def value(self, r):
        """Vectorized ``phi(r)``."""

    @abstractmethod
    def prime(self, r):
        """Vectorized ``phi'(r)`` (left and right derivatives agree for the built-in kinds)."""

    @abstractmethod
    def log_prime(self, r):
        """Vectorized ``ln phi'(r)``, finite where ``phi'`` itself would overflow."""

    @abstractmethod
    def radial_mass(self, x):
        """Vectorized ``Psi(x)``."""

    @abstractmethod
    def log_radial_tail(self, x):
        """Vectorized ``ln Psi_tail(x)``."""

    @property
    @abstractmethod
    def psi_infinity(self) -> float:
        """``Psi(oo)``."""

    @abstractmethod
    def to_descriptor(self) -> dict:
        """Configuration table of the profile."""

    def _validation_grid(self) -> np.ndarray:
        return np.concatenate([[0.0], np.logspace(-3.0, 1.0, 200)])

    def _check_shape(self):
        r = self._validation_grid()
        phi = self.value(r)
        if phi[0] < 0:
            raise PhiValidationError(f"{self.kind}: phi(0) must be nonnegative, got {phi[0]}")
        if np.any(np.diff(phi) < -CONVEXITY_TOLERANCE * np.maximum(1.0, np.abs(phi[1:]))):
            raise PhiValidationError(f"{self.kind}: phi is not nondecreasing")
        if not phi[-1] > phi[0]:
            raise PhiValidationError(f"{self.kind}: phi is constant")
        i, j = np.triu_indices(r.size, k=2)
        mid = self.value(0.5 * (r[i] + r[j]))
        chord = 0.5 * (phi[i] + phi[j])
        if np.any(mid > chord + CONVEXITY_TOLERANCE * np.maximum(1.0, np.abs(chord))):
            raise PhiValidationError(f"{self.kind}: phi fails the midpoint convexity test")


def _positive(name: str, value: float, kind: str) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise PhiValidationError(f"{kind}: parameter {name} must be positive and finite, got {value}")
    return value


def _gamma_prefactor_log(c: float, p: float) -> float:
    # Psi(x) = Gamma(2/p) P(2/p, c x^p) / (p c^(2/p))
    return -math.log(p) - (2.0 / p) * math.log(c)


def _gamma_radial_mass(c: float, p: float, x):
    a = 2.0 / p
    x = np.asarray(x, dtype=float)
    with np.errstate(over='ignore'):
        y = c * x ** p
    return math.exp(_gamma_prefactor_log(c, p) + special.gammaln(a)) * special.gammainc(a, y)


def _gamma_log_radial_tail(c: float, p: float, x):
    a = 2.0 / p
    x = np.asarray(x, dtype=float)
    with np.errstate(over='ignore', divide='ignore'):
        y = c * x ** p
        small = np.minimum(y, GAMMA_TAIL_SWITCH)
        direct = special.gammaln(a) + np.log(special.gammaincc(a, small))
        large = np.maximum(y, GAMMA_TAIL_SWITCH)
        # Gamma(a, y) ~ y^(a-1) e^(-y) (1 + (a-1)/y + (a-1)(a-2)/y^2 + (a-1)(a-2)(a-3)/y^3)
        series = 1.0 + (a - 1.0) / large * (1.0 + (a - 2.0) / large * (1.0 + (a - 3.0) / large))
        asymptotic = (a - 1.0) * np.log(large) - large + np.log(series)
    return _gamma_prefactor_log(c, p) + np.where(y < GAMMA_TAIL_SWITCH, direct, asymptotic)


@dataclass(frozen=True)
class PowerPhi(PhiFunction):
    """``phi(r) = c r^p`` with ``p >= 1``; ``PowerPhi(0.5, 2)`` is the Gaussian profile."""

    c: float
    p: float
    kind = "power"

    def __post_init__(self):
        _positive("c", self.c, self.kind)
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise PhiValidationError(f"power: exponent p must be >= 1, got {self.p}")
        self._check_shape()

    def value(self, r):
        return self.c * np.asarray(r, dtype=float) ** self.p

    def prime(self, r):
        r = np.asarray(r, dtype=float)
        if self.p == 1:
            return np.full(r.shape, self.c)
        return self.c * self.p * r ** (self.p - 1.0)

    def log_prime(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide='ignore'):
            return math.log(self.c * self.p) + (self.p - 1.0) * np.log(np.where(self.p == 1, 1.0, r))

    def radial_mass(self, x):
        return _gamma_radial_mass(self.c, self.p, x)

    def log_radial_tail(self, x):
        return _gamma_log_radial_tail(self.c, self.p, x)

    @property
    def psi_infinity(self) -> float:
        return math.exp(_gamma_prefactor_log(self.c, self.p) + special.gammaln(2.0 / self.p))

    def to_descriptor(self) -> dict:
        return {"kind": self.kind, "c": self.c, "p": self.p}


@dataclass(frozen=True)
class LinearPhi(PhiFunction):
    """``phi(r) = c r``."""

    c: float
    kind = "linear"

    def __post_init__(self):
        _positive("c", self.c, self.kind)
        self._check_shape()

    def value(self, r):
        return self.c * np.asarray(r, dtype=float)

    def prime(self, r):
        return np.full(np.shape(r), self.c)

    def log_prime(self, r):
        return np.full(np.shape(r), math.log(self.c))

    def radial_mass(self, x):
        return _gamma_radial_mass(self.c, 1.0, x)

    def log_radial_tail(self, x):
        return _gamma_log_radial_tail(self.c, 1.0, x)

    @property
    def psi_infinity(self) -> float:
        return 1.0 / self.c ** 2

    def to_descriptor(self) -> dict:
        return {"kind": self.kind, "c": self.c}


def _panel_rule(lower, upper, panels: int, order: int):
    """Composite Gauss-Legendre nodes and weights on ``[lower_i, upper_i]`` for each row."""
    xi, w = np.polynomial.legendre.leggauss(order)
    lower = np.asarray(lower, dtype=float)[..., None, None]
    width = (np.asarray(upper, dtype=float)[..., None, None] - lower) / panels
    j = np.arange(panels)[:, None]
    nodes = lower + width * (j + 0.5 * (xi[None, :] + 1.0))
    weights = 0.5 * width * w[None, :] * np.ones_like(nodes)
    shape = nodes.shape[:-2] + (panels * order,)
    return nodes.reshape(shape), weights.reshape(shape)


@dataclass(frozen=True)
class Expm1Phi(PhiFunction):
    """``phi(r) = exp(a r) - 1``."""

    a: float
    kind = "expm1"

    def __post_init__(self):
        _positive("a", self.a, self.kind)
        self._check_shape()

    def _validation_grid(self) -> np.ndarray:
        return np.concatenate([[0.0], np.logspace(-3.0, math.log10(min(10.0, 30.0 / self.a)), 200)])

    def value(self, r):
        with np.errstate(over='ignore'):
            return np.expm1(self.a * np.asarray(r, dtype=float))

    def prime(self, r):
        with np.errstate(over='ignore'):
            return self.a * np.exp(self.a * np.asarray(r, dtype=float))

    def log_prime(self, r):
        return math.log(self.a) + self.a * np.asarray(r, dtype=float)

    @cached_property
    def _truncation(self) -> float:
        # phi reaches 745 here, so s exp(-phi(s)) is below the double-precision floor
        return math.log1p(RADIAL_TAIL_EXPONENT) / self.a

    def radial_mass(self, x):
        x = np.asarray(x, dtype=float)
        upper = np.minimum(x, self._truncation)
        s, w = _panel_rule(np.zeros_like(upper), upper, RADIAL_PANELS, RADIAL_PANEL_ORDER)
        return np.sum(w * s * np.exp(-self.value(s)), axis=-1)

    def log_radial_tail(self, x):
        # Psi_tail(x) = exp(-phi(x)) * integral_0^U (x+u) exp(-e^(a x) expm1(a u)) du
        x = np.asarray(x, dtype=float)
        with np.errstate(over='ignore', under='ignore', divide='ignore'):
            scale = np.exp(-self.a * x)
            span = np.log1p(RADIAL_TAIL_EXPONENT * scale) / self.a
            u, w = _panel_rule(np.zeros_like(x), span, RADIAL_PANELS, RADIAL_PANEL_ORDER)
            growth = np.exp(self.a * x)[..., None] * np.expm1(self.a * u)
            inner = np.sum(w * (x[..., None] + u) * np.exp(-growth), axis=-1)
            return -self.value(x) + np.log(inner)

    @cached_property
    def _psi_infinity(self) -> float:
        return line_integrate(lambda s: s * math.exp(-math.expm1(self.a * s)), 0.0, math.inf).value.to_float()

    @property
    def psi_infinity(self) -> float:
        return self._psi_infinity

    def to_descriptor(self) -> dict:
        return {"kind": self.kind, "a": self.a}


@dataclass(frozen=True)
class ZeroPhi(PhiFunction):
    """``phi = 0``: Lebesgue measure, for mixed-volume sanity checks only.

    Constant profiles are excluded from the rate theorems, so this profile is
    only constructible with ``allow_debug=True``.
    """

    allow_debug: bool = False
    kind = "zero"

    def __post_init__(self):
        if not self.allow_debug:
            raise PhiValidationError("phi = 0 is only available as an explicit debug density")

    def value(self, r):
        return np.zeros(np.shape(r))

    def prime(self, r):
        return np.zeros(np.shape(r))

    def log_prime(self, r):
        return np.full(np.shape(r), -np.inf)

    def radial_mass(self, x):
        return 0.5 * np.asarray(x, dtype=float) ** 2

    def log_radial_tail(self, x):
        raise PreconditionError("the debug density has infinite mass; complements are not defined")

    @property
    def psi_infinity(self) -> float:
        return math.inf

    def to_descriptor(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class GrowthReport:
    """Samples of ``ln phi'(t) / phi(t)``; the second-order rate needs this to tend to 0."""

    t_grid: np.ndarray = field(compare=False)
    ratios: np.ndarray = field(compare=False)
    decreasing_to_zero: bool = True


@dataclass(frozen=True)
class MeasureSpec:
    """Measure with density ``c0 * exp(-phi(||x||_L))``.

    Attributes
    ----------
    phi : PhiFunction
        Density profile.
    gauge_body : SupportBody2D
        The body ``L`` whose gauge is the radial variable.
    c0 : float
        Explicit normalization constant; rate ratios do not depend on it, the tail does.
    normalized : bool
        When set, ``c0 * Z = 1`` within 1e-8 is enforced.
    """

    phi: PhiFunction
    gauge_body: SupportBody2D
    c0: float = 1.0
    normalized: bool = False

    def __post_init__(self):
        if not (self.c0 > 0 and math.isfinite(self.c0)):
            raise PreconditionError(f"normalization constant c0 must be positive, got {self.c0}")
        if self.normalized:
            z = normalization_constant(self)
            if abs(self.c0 * z - 1.0) > NORMALIZATION_TOLERANCE:
                raise PreconditionError(f"c0={self.c0!r} does not normalize the measure (Z={z!r})")

    @property
    def is_debug(self) -> bool:
        return isinstance(self.phi, ZeroPhi)

    @property
    def log_c0(self) -> float:
        return math.log(self.c0)

    @classmethod
    def gaussian(cls, normalized: bool = True) -> "MeasureSpec":
        """Standard Gaussian: ``phi(r) = r^2/2``, ``L`` the unit disk, ``c0 = 1/(2 pi)`` if normalized."""
        phi = PowerPhi(0.5, 2.0)
        if normalized:
            return cls(phi, Disk(1.0), 1.0 / (2.0 * math.pi), True)
        return cls(phi, Disk(1.0))

    @classmethod
    def lebesgue(cls, gauge_body: SupportBody2D | None = None) -> "MeasureSpec":
        """The ``phi = 0`` debug measure (area)."""
        return cls(ZeroPhi(allow_debug=True), gauge_body or Disk(1.0))

    def with_c0(self, c0: float) -> "MeasureSpec":
        return MeasureSpec(self.phi, self.gauge_body, c0, False)


def phi_eval(phi: PhiFunction, r: float) -> float:
    """``phi(r)`` for ``r >= 0``; negative radii raise :class:`DomainError`."""
    if r < 0:
        raise DomainError(f"phi evaluated at negative radius {r}")
    return float(phi.value(r))


def phi_prime(phi: PhiFunction, r: float) -> float:
    """``phi'(r)``; at ``r = 0`` the right limit is returned."""
    if r < 0:
        raise DomainError(f"phi' evaluated at negative radius {r}")
    return float(phi.prime(r))


def growth_condition_report(phi: PhiFunction, t_grid) -> GrowthReport:
    """Sample ``ln phi'(t) / phi(t)`` on an increasing positive grid.

    The flag ``decreasing_to_zero`` is set when the magnitudes over the upper
    half of the grid are nonincreasing and the last one is no larger than the first.
    """
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise PreconditionError("growth report needs an increasing positive grid")
    ratios = phi.log_prime(t) / phi.value(t)
    magnitude = np.abs(ratios)
    upper = magnitude[t.size // 2:]
    decreasing = bool(np.all(np.diff(upper) <= 1e-15) and magnitude[-1] <= magnitude[0])
    if not decreasing:
        logging.warning(f"{phi.kind}: ln phi'/phi does not decrease towards 0 on the grid")
    return GrowthReport(t, ratios, decreasing)


def partial_radial_mass(phi: PhiFunction, x: float) -> float:
    """``Psi(x) = integral_0^x s exp(-phi(s)) ds``; ``x = inf`` gives ``Psi(oo)``.

    Power and linear profiles use the regularized incomplete gamma function;
    the exponential profile uses adaptive quadrature (absolute tolerance 1e-12).
    """
    if x < 0:
        raise DomainError(f"radial mass evaluated at negative radius {x}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return phi.psi_infinity
    if isinstance(phi, Expm1Phi):
        return line_integrate(lambda s: s * math.exp(-math.expm1(phi.a * s)), 0.0, float(x)).value.to_float()
    return float(phi.radial_mass(x))


def normalization_constant(measure: MeasureSpec) -> float:
    """Total mass ``Z = 2 area(L) Psi(oo)`` of ``exp(-phi(||x||_L))``.

    Substituting ``s = r ||u(theta)||_L`` in polar coordinates separates the
    angular and radial integrals.
    """
    if measure.is_debug:
        raise PreconditionError("the debug density has infinite mass")
    return 2.0 * measure.gauge_body.area() * measure.phi.psi_infinity


def normalize(measure: MeasureSpec) -> MeasureSpec:
    """Copy of the measure with ``c0 = 1/Z``."""
    return MeasureSpec(measure.phi, measure.gauge_body, 1.0 / normalization_constant(measure), True)


def phi_from_descriptor(descriptor: dict, key_path: str = "measure.phi") -> PhiFunction:
    """Build a profile from ``{kind="power", c=0.5, p=2.0}`` and friends."""
    if "kind" not in descriptor:
        raise ConfigError(f"{key_path}.kind: missing required key")
    kind = normalize_string(str(descriptor["kind"]))
    builders = {
        "power": (PowerPhi, ("c", "p")),
        "linear": (LinearPhi, ("c",)),
        "expm1": (Expm1Phi, ("a",)),
    }
    if kind not in VALID_PHI_KINDS:
        raise ConfigError(f"{key_path}.kind: unknown phi kind '{descriptor['kind']}', "
                          f"expected one of {VALID_PHI_KINDS}")
    builder, keys = builders[kind]
    missing = [k for k in keys if k not in descriptor]
    if missing:
        raise ConfigError(f"{key_path}.{missing[0]}: missing required key")
    try:
        return builder(*(float(descriptor[k]) for k in keys))
    except PhiValidationError as err:
        raise PhiValidationError(f"{key_path}: {err}") from err
    except (TypeError, ValueError) as err:
        raise ConfigError(f"{key_path}: {err}") from err
