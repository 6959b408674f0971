"""Planar convex bodies containing the origin, described by their support functions.

Every body exposes ``h``, ``h'`` (and ``h''`` when it is C2plus) as vectorized
functions of the normal angle, a gauge (Minkowski functional), the radial
function used by polar-coordinate mass integrals, and the angles where these
functions have kinks. Bodies are immutable and validated on construction.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import NamedTuple

import numpy as np

from ..common.errors import (
    AmbiguousMaximizerError,
    BodyValidationError,
    ConfigError,
    DegenerateBodyError,
    NumericalFailureError,
    PolygonOrientationError,
    SmoothnessError,
)
from ..common.log_value import LogSamples
from ..common.utilities import (
    angle_grid,
    golden_section_search,
    normalize_string,
    reduce_angle,
    unit_frame,
)
from ..constants import (
    EULER_IDENTITY_TOLERANCE,
    FOURIER_CONVEXITY_MARGIN,
    FOURIER_MAX_HARMONICS,
    GAUGE_AMBIGUITY_TOLERANCE,
    GAUGE_CHUNK_SIZE,
    GAUGE_SCAN_NODES,
    GOLDEN_ANGLE_WIDTH,
    INRADIUS_REFINEMENT_TOLERANCE,
    MINIMIZE_SCAN_NODES,
    POLYGON_TIE_TOLERANCE,
    TWO_PI,
    VALID_BODY_KINDS,
    VALIDATION_GRID_NODES,
)
from ..quadrature import argmin_clusters, circle_integrate, circle_minimize


class Angle(float):
    """Normal angle in radians, reduced into ``[0, 2*pi)`` on construction."""

    def __new__(cls, theta: float):
        return super().__new__(cls, float(reduce_angle(float(theta))))


class SmoothnessClass(Enum):
    C2PLUS = "C2plus"
    PIECEWISE = "piecewise"


class SupportValues(NamedTuple):
    """Support function and derivatives at one angle; ``h_second`` is None for piecewise bodies."""

    h: float
    h_prime: float
    h_second: float | None


class BoundaryPoint(NamedTuple):
    """Boundary point ``x = h u + h' u'`` with outer normal ``u(theta)``."""

    x: np.ndarray
    theta: Angle
    h: float
    h_prime: float
    f: float


class InradiusResult(NamedTuple):
    """Largest ``r`` with ``r L`` contained in ``K`` (homothety about the origin).

    ``tangency_angles`` holds one representative per contact arc listed in
    ``tangency_arcs``; ``refinement_change`` is the change of ``r`` between the
    4096-node search and its twice-refined repetition.
    """

    r: float
    tangency_angles: list[Angle]
    tangency_arcs: list[tuple[float, float]]
    refinement_change: float
    ratio_profile: np.ndarray | None = None


@dataclass
class BodyDiagnostics:
    """Grid diagnostics of a body on 4096 normal angles."""

    min_h: float
    min_f: float | None
    is_c2plus: bool
    accepted: bool
    messages: list[str] = field(default_factory=list)


class SupportBody2D(ABC):
    """A planar convex body with the origin in its interior."""

    @property
    @abstractmethod
    def smoothness(self) -> SmoothnessClass:
        """Smoothness class of the boundary."""

    @abstractmethod
    def support(self, theta) -> tuple[np.ndarray, np.ndarray]:
        """Return ``h(theta)`` and ``h'(theta)`` (left derivative at kinks)."""

    @abstractmethod
    def to_descriptor(self) -> dict:
        """Return the configuration table describing this body."""

    def support_second(self, theta) -> np.ndarray:
        raise SmoothnessError(f"{type(self).__name__} is not C2: h'' is not available")

    def curvature(self, theta) -> np.ndarray:
        """Curvature function ``f = h'' + h`` (radius of curvature at the normal ``theta``)."""
        return self.support_second(theta) + self.support(theta)[0]

    def support_kinks(self) -> np.ndarray:
        """Normal angles where ``h'`` jumps."""
        return np.empty(0)

    def radial_kinks(self) -> np.ndarray:
        """Polar angles where the radial function is not smooth."""
        return np.empty(0)

    def gauge(self, points) -> np.ndarray:
        """Minkowski functional at an array of points of shape ``(..., 2)``."""
        pts = np.asarray(points, dtype=float)
        values, _, _ = _maximize_support_ratio(self, pts.reshape(-1, 2))
        return values.reshape(pts.shape[:-1])

    def gauge_gradient(self, points) -> np.ndarray:
        """Gradient ``u*/h(u*)`` of the gauge at nonzero points, ``u*`` the maximizing direction."""
        if self.smoothness is not SmoothnessClass.C2PLUS:
            raise SmoothnessError(f"gauge gradient of a {self.smoothness.value} body is not unique")
        pts = np.asarray(points, dtype=float)
        flat = pts.reshape(-1, 2)
        _, theta, ambiguous = _maximize_support_ratio(self, flat, check_ambiguity=True)
        if ambiguous.any():
            raise AmbiguousMaximizerError(
                f"Non-unique maximizer of <x,u>/h(u) at {int(ambiguous.sum())} point(s)"
            )
        u, _ = unit_frame(theta)
        grad = u / self.support(theta)[0][:, None]
        return grad.reshape(pts.shape)

    def radial(self, theta) -> np.ndarray:
        """Radial function ``rho(theta) = 1 / gauge(u(theta))``."""
        u, _ = unit_frame(theta)
        return 1.0 / self.gauge(u)

    def area(self) -> float:
        """Lebesgue area ``(1/2) * integral of rho^2``."""
        def integrand(theta):
            return LogSamples.positive(2.0 * np.log(self.radial(theta)) - math.log(2.0))

        return circle_integrate(integrand, self.radial_kinks(), tolerance=1e-12).value.to_float()


def _support_ratio(body: SupportBody2D, pts: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """``<x, u(theta)> / h(theta)`` for paired points and angles (last axis of pts is 2)."""
    return (pts[..., 0] * np.cos(theta) + pts[..., 1] * np.sin(theta)) / body.support(theta)[0]


def _maximize_support_ratio(body: SupportBody2D, pts: np.ndarray, check_ambiguity: bool = False):
    """Gauge as ``sup_u <x,u>/h(u)``: grid scan, golden-section refinement, kink candidates."""
    grid = angle_grid(GAUGE_SCAN_NODES)
    step = TWO_PI / GAUGE_SCAN_NODES
    u_grid, _ = unit_frame(grid)
    h_grid = body.support(grid)[0]
    kinks = reduce_angle(body.support_kinks())
    u_kinks, _ = unit_frame(kinks)
    h_kinks = body.support(kinks)[0] if kinks.size else np.empty(0)

    values = np.empty(pts.shape[0])
    thetas = np.empty(pts.shape[0])
    ambiguous = np.zeros(pts.shape[0], dtype=bool)
    for start in range(0, pts.shape[0], GAUGE_CHUNK_SIZE):
        chunk = pts[start:start + GAUGE_CHUNK_SIZE]
        ratios = (chunk @ u_grid.T) / h_grid
        idx = np.argmax(ratios, axis=1)
        best_grid = ratios[np.arange(chunk.shape[0]), idx]

        theta, value = golden_section_search(
            lambda th, c=chunk: _support_ratio(body, c, th),
            grid[idx] - step, grid[idx] + step, GOLDEN_ANGLE_WIDTH, maximize=True,
        )
        theta = np.where(best_grid > value, grid[idx], theta)
        value = np.maximum(best_grid, value)
        if kinks.size:
            kink_ratios = (chunk @ u_kinks.T) / h_kinks
            k_idx = np.argmax(kink_ratios, axis=1)
            k_best = kink_ratios[np.arange(chunk.shape[0]), k_idx]
            theta = np.where(k_best >= value, kinks[k_idx], theta)
            value = np.maximum(k_best, value)

        values[start:start + chunk.shape[0]] = np.maximum(value, 0.0)
        thetas[start:start + chunk.shape[0]] = reduce_angle(theta)
        if check_ambiguity:
            row_max = ratios.max(axis=1, keepdims=True)
            local = (ratios >= np.roll(ratios, 1, axis=1)) & (ratios >= np.roll(ratios, -1, axis=1))
            near = ratios >= row_max - GAUGE_AMBIGUITY_TOLERANCE * np.maximum(1.0, np.abs(row_max))
            cells = np.arange(GAUGE_SCAN_NODES)[None, :]
            distance = np.abs(cells - idx[:, None])
            distance = np.minimum(distance, GAUGE_SCAN_NODES - distance)
            ambiguous[start:start + chunk.shape[0]] = (local & near & (distance > 2)).any(axis=1)
    return values, thetas, ambiguous


@dataclass(frozen=True)
class Disk(SupportBody2D):
    """Euclidean disk of the given radius centred at the origin."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise BodyValidationError(f"disk radius must be positive, got {self.radius}")

    @property
    def smoothness(self) -> SmoothnessClass:
        return SmoothnessClass.C2PLUS

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.full(theta.shape, self.radius), np.zeros(theta.shape)

    def support_second(self, theta):
        return np.zeros(np.shape(theta))

    def gauge(self, points):
        return np.linalg.norm(np.asarray(points, dtype=float), axis=-1) / self.radius

    def gauge_gradient(self, points):
        pts = np.asarray(points, dtype=float)
        return pts / (self.radius * np.linalg.norm(pts, axis=-1, keepdims=True))

    def radial(self, theta):
        return np.full(np.shape(theta), self.radius)

    def area(self) -> float:
        return math.pi * self.radius ** 2

    def to_descriptor(self) -> dict:
        return {"kind": "disk", "radius": self.radius}


@dataclass(frozen=True)
class Ellipse(SupportBody2D):
    """Axis-aligned ellipse with semiaxes ``a`` (along x) and ``b`` (along y)."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise BodyValidationError(f"ellipse semiaxes must be positive, got a={self.a}, b={self.b}")

    @property
    def smoothness(self) -> SmoothnessClass:
        return SmoothnessClass.C2PLUS

    def _q(self, theta):
        c, s = np.cos(theta), np.sin(theta)
        return self.a ** 2 * c ** 2 + self.b ** 2 * s ** 2

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        h = np.sqrt(self._q(theta))
        q1 = (self.b ** 2 - self.a ** 2) * np.sin(2.0 * theta)
        return h, q1 / (2.0 * h)

    def support_second(self, theta):
        theta = np.asarray(theta, dtype=float)
        h = np.sqrt(self._q(theta))
        q1 = (self.b ** 2 - self.a ** 2) * np.sin(2.0 * theta)
        q2 = 2.0 * (self.b ** 2 - self.a ** 2) * np.cos(2.0 * theta)
        return q2 / (2.0 * h) - q1 ** 2 / (4.0 * h ** 3)

    def gauge(self, points):
        pts = np.asarray(points, dtype=float)
        return np.sqrt((pts[..., 0] / self.a) ** 2 + (pts[..., 1] / self.b) ** 2)

    def gauge_gradient(self, points):
        pts = np.asarray(points, dtype=float)
        scaled = np.stack([pts[..., 0] / self.a ** 2, pts[..., 1] / self.b ** 2], axis=-1)
        return scaled / self.gauge(pts)[..., None]

    def radial(self, theta):
        theta = np.asarray(theta, dtype=float)
        return 1.0 / np.sqrt((np.cos(theta) / self.a) ** 2 + (np.sin(theta) / self.b) ** 2)

    def area(self) -> float:
        return math.pi * self.a * self.b

    def to_descriptor(self) -> dict:
        return {"kind": "ellipse", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class FourierBody(SupportBody2D):
    """Body with support ``a0 + sum_k (cos_k cos(k theta) + sin_k sin(k theta))``.

    ``cos[k-1]`` and ``sin[k-1]`` are the coefficients of harmonic ``k``; at most
    64 harmonics. With ``check=True`` (the default) a body whose curvature
    function is not above 1e-10 on 4096 angles, or whose support is not
    positive, is rejected; ``check=False`` keeps it so :func:`validate` can
    report on it.
    """

    a0: float
    cos: tuple[float, ...] = ()
    sin: tuple[float, ...] = ()
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cos", tuple(float(c) for c in self.cos))
        object.__setattr__(self, "sin", tuple(float(s) for s in self.sin))
        if max(len(self.cos), len(self.sin)) > FOURIER_MAX_HARMONICS:
            raise BodyValidationError(
                f"fourier body has more than {FOURIER_MAX_HARMONICS} harmonics"
            )
        if self.check:
            report = validate(self)
            if not report.accepted:
                raise BodyValidationError("fourier body rejected: " + "; ".join(report.messages))

    @cached_property
    def _coefficients(self):
        n = max(len(self.cos), len(self.sin), 1)
        a = np.zeros(n)
        b = np.zeros(n)
        a[:len(self.cos)] = self.cos
        b[:len(self.sin)] = self.sin
        return np.arange(1, n + 1, dtype=float), a, b

    @property
    def smoothness(self) -> SmoothnessClass:
        return SmoothnessClass.C2PLUS

    def _harmonics(self, theta):
        k, a, b = self._coefficients
        kt = np.multiply.outer(np.asarray(theta, dtype=float), k)
        return k, a, b, np.cos(kt), np.sin(kt)

    def support(self, theta):
        k, a, b, c, s = self._harmonics(theta)
        return self.a0 + c @ a + s @ b, s @ (-k * a) + c @ (k * b)

    def support_second(self, theta):
        k, a, b, c, s = self._harmonics(theta)
        return -(c @ (k ** 2 * a) + s @ (k ** 2 * b))

    def area(self) -> float:
        k, a, b = self._coefficients
        return math.pi * self.a0 ** 2 + 0.5 * math.pi * float(np.sum((1.0 - k ** 2) * (a ** 2 + b ** 2)))

    def to_descriptor(self) -> dict:
        return {"kind": "fourier", "a0": self.a0, "cos": list(self.cos), "sin": list(self.sin)}


@dataclass(frozen=True)
class PolygonBody(SupportBody2D):
    """Convex polygon given by counterclockwise vertices."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise BodyValidationError(f"polygon needs at least 3 vertices, got {len(verts)}")
        v = np.array(verts)
        edges = np.roll(v, -1, axis=0) - v
        signed_area = 0.5 * float(np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1]))
        if signed_area <= 0:
            raise PolygonOrientationError("polygon vertices must be listed counterclockwise")
        turns = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
        if np.any(turns <= POLYGON_TIE_TOLERANCE * float(np.max(np.abs(v))) ** 2):
            raise BodyValidationError("polygon turning is not strictly convex")
        if np.any(self._offsets <= 0):
            raise BodyValidationError("origin is not in the interior of the polygon")

    @cached_property
    def _v(self) -> np.ndarray:
        return np.array(self.vertices)

    @cached_property
    def _edges(self) -> np.ndarray:
        return np.roll(self._v, -1, axis=0) - self._v

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(self._edges, axis=1)

    @cached_property
    def edge_normals(self) -> np.ndarray:
        """Outer unit normal of edge ``i`` (from vertex ``i`` to ``i+1``)."""
        e = self._edges
        return np.stack([e[:, 1], -e[:, 0]], axis=1) / self.edge_lengths[:, None]

    @cached_property
    def _offsets(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self._v, self.edge_normals)

    @property
    def smoothness(self) -> SmoothnessClass:
        return SmoothnessClass.PIECEWISE

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        u, up = unit_frame(theta)
        values = u @ self._v.T
        h = values.max(axis=-1)
        scale = float(np.max(np.abs(self._v)))
        tied = values >= (h - POLYGON_TIE_TOLERANCE * scale)[..., None]
        # left derivative: among tied vertices the one leading just before the switch
        slopes = np.where(tied, up @ self._v.T, np.inf)
        return h, slopes.min(axis=-1)

    def support_kinks(self) -> np.ndarray:
        n = self.edge_normals
        return reduce_angle(np.arctan2(n[:, 1], n[:, 0]))

    def radial_kinks(self) -> np.ndarray:
        return reduce_angle(np.arctan2(self._v[:, 1], self._v[:, 0]))

    def gauge(self, points):
        pts = np.asarray(points, dtype=float)
        return np.maximum((pts @ self.edge_normals.T / self._offsets).max(axis=-1), 0.0)

    def gauge_gradient(self, points):
        raise SmoothnessError("gauge gradient of a polygon is not unique at vertices")

    def area(self) -> float:
        v = self._v
        return 0.5 * float(np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1]))

    def edges(self) -> list[tuple[np.ndarray, np.ndarray, float, float]]:
        """Per edge: start vertex, unit direction, length, outer normal angle."""
        angles = self.support_kinks()
        return [
            (self._v[i], self._edges[i] / self.edge_lengths[i], float(self.edge_lengths[i]), float(angles[i]))
            for i in range(len(self.vertices))
        ]

    def to_descriptor(self) -> dict:
        return {"kind": "polygon", "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class MinkowskiCombination(SupportBody2D):
    """Nonnegative combination ``sum c_i K_i``; support functions add."""

    terms: tuple[tuple[float, SupportBody2D], ...]

    def __post_init__(self):
        kept = []
        for coefficient, body in self.terms:
            if coefficient < 0:
                raise BodyValidationError(f"Minkowski coefficients must be nonnegative, got {coefficient}")
            if coefficient > 0:
                kept.append((float(coefficient), body))
        if not kept:
            raise DegenerateBodyError("Minkowski combination has no strictly positive coefficient")
        object.__setattr__(self, "terms", tuple(kept))

    @property
    def smoothness(self) -> SmoothnessClass:
        if all(body.smoothness is SmoothnessClass.C2PLUS for _, body in self.terms):
            return SmoothnessClass.C2PLUS
        return SmoothnessClass.PIECEWISE

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        h = np.zeros(theta.shape)
        hp = np.zeros(theta.shape)
        for coefficient, body in self.terms:
            bh, bhp = body.support(theta)
            h = h + coefficient * bh
            hp = hp + coefficient * bhp
        return h, hp

    def support_second(self, theta):
        return sum(coefficient * body.support_second(theta) for coefficient, body in self.terms)

    def support_kinks(self) -> np.ndarray:
        kinks = [body.support_kinks() for _, body in self.terms]
        return np.unique(np.concatenate(kinks)) if kinks else np.empty(0)

    def radial_kinks(self) -> np.ndarray:
        # each normal kink opens a flat boundary piece whose two endpoints are radial kinks
        normals = self.support_kinks()
        if normals.size == 0:
            return np.empty(0)
        rays = []
        for side in (-1e-9, 1e-9):
            h, hp = self.support(normals + side)
            u, up = unit_frame(normals + side)
            x = h[:, None] * u + hp[:, None] * up
            rays.append(np.arctan2(x[:, 1], x[:, 0]))
        return np.unique(reduce_angle(np.concatenate(rays)))

    def to_descriptor(self) -> dict:
        return {"kind": "combination", "terms": [[c, body.to_descriptor()] for c, body in self.terms]}


def support_eval(body: SupportBody2D, theta: float) -> SupportValues:
    """Support function ``h`` and its derivatives at one normal angle.

    Polygons (and combinations containing them) report ``h_second`` as None and
    ``h'`` as the left derivative at vertex-switch angles.
    """
    h, hp = body.support(np.array([float(theta)]))
    if body.smoothness is SmoothnessClass.C2PLUS:
        hpp = float(body.support_second(np.array([float(theta)]))[0])
    else:
        hpp = None
    return SupportValues(float(h[0]), float(hp[0]), hpp)


def boundary_points(body: SupportBody2D, theta):
    """Vectorized boundary parameterization of a C2plus body.

    Returns:
        tuple: Points ``x`` of shape ``(n, 2)`` and arrays ``h``, ``h'``, ``f``.
    """
    if body.smoothness is not SmoothnessClass.C2PLUS:
        raise SmoothnessError("boundary parameterization needs a C2plus body")
    theta = np.asarray(theta, dtype=float)
    h, hp = body.support(theta)
    f = body.support_second(theta) + h
    u, up = unit_frame(theta)
    return h[..., None] * u + hp[..., None] * up, h, hp, f


def boundary_point(body: SupportBody2D, theta: float) -> BoundaryPoint:
    """Boundary point with outer normal ``u(theta)`` of a C2plus body."""
    x, h, hp, f = boundary_points(body, np.array([float(theta)]))
    return BoundaryPoint(x[0], Angle(theta), float(h[0]), float(hp[0]), float(f[0]))


def gauge(body: SupportBody2D, x) -> float:
    """Minkowski functional ``||x||_body``; ``gauge(0) = 0``."""
    return float(body.gauge(np.asarray(x, dtype=float)[None, :])[0])


def gauge_gradient(body: SupportBody2D, x) -> np.ndarray:
    """Gradient of the gauge at a nonzero point.

    Raises:
        ValueError: If ``x`` is the origin.
        SmoothnessError: If the body is not C2plus.
        AmbiguousMaximizerError: If the maximizing direction is not unique.
        NumericalFailureError: If the Euler identity ``<grad, x> = ||x||`` fails by more than 1e-9.
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ValueError("gauge gradient is undefined at the origin")
    grad = body.gauge_gradient(x[None, :])[0]
    value = gauge(body, x)
    if abs(float(grad @ x) - value) > EULER_IDENTITY_TOLERANCE * max(1.0, value):
        raise NumericalFailureError(f"Euler identity violated: <grad, x>={grad @ x!r}, gauge={value!r}")
    return grad


def radial(body: SupportBody2D, theta: float) -> float:
    """Radial function: ``radial(theta) * u(theta)`` lies on the boundary."""
    return float(body.radial(np.array([float(theta)]))[0])


def area(body: SupportBody2D) -> float:
    """Area of the body (closed forms for disks, ellipses, Fourier bodies and polygons)."""
    return body.area()


def minkowski_combine(terms) -> SupportBody2D:
    """Nonnegative Minkowski combination of bodies.

    Args:
        terms: Iterable of ``(coefficient, body)`` pairs.

    Returns:
        SupportBody2D: The combination; a single term with coefficient 1 returns the body itself.

    Raises:
        DegenerateBodyError: If every coefficient is zero.
    """
    combination = MinkowskiCombination(tuple((float(c), body) for c, body in terms))
    if len(combination.terms) == 1 and combination.terms[0][0] == 1.0:
        return combination.terms[0][1]
    return combination


def inradius(K: SupportBody2D, L: SupportBody2D, keep_profile: bool = False) -> InradiusResult:
    """L-inradius of K: ``r = min_theta h_K(theta) / h_L(theta)``.

    ``r L`` is contained in ``K`` exactly when ``r h_L <= h_K`` pointwise, so no
    optimization solver is needed. Contact directions are the grid angles whose
    ratio lies within 1e-6 (relative) of ``r``, grouped into arcs.

    Raises:
        NumericalFailureError: If the twice-refined search moves ``r`` by more than 1e-9.
    """
    def ratio(theta):
        return K.support(theta)[0] / L.support(theta)[0]

    coarse = circle_minimize(ratio, MINIMIZE_SCAN_NODES)
    fine = circle_minimize(ratio, 4 * MINIMIZE_SCAN_NODES)
    change = abs(coarse.min_value - fine.min_value)
    r = min(coarse.min_value, fine.min_value)
    if change > INRADIUS_REFINEMENT_TOLERANCE * max(1.0, r):
        raise NumericalFailureError(f"Inradius refinement changed r by {change:.3e}", r)

    grid = angle_grid(MINIMIZE_SCAN_NODES)
    profile = ratio(grid)
    near = grid[profile <= r * (1.0 + 1e-6)]
    candidates = np.concatenate([near, coarse.argmin_set, fine.argmin_set])
    tangency, arcs = [], []
    for cluster in argmin_clusters(candidates):
        values = ratio(cluster)
        tangency.append(Angle(cluster[int(np.argmin(values))]))
        arcs.append((float(reduce_angle(cluster[0])), float(reduce_angle(cluster[-1]))))
    logging.debug(f"inradius r={r:.15g} with {len(tangency)} contact arc(s)")
    return InradiusResult(r, tangency, arcs, change, profile if keep_profile else None)


def validate(body: SupportBody2D) -> BodyDiagnostics:
    """Report ``min h`` and ``min f = h'' + h`` on 4096 angles; never raises."""
    theta = angle_grid(VALIDATION_GRID_NODES)
    h, _ = body.support(theta)
    min_h = float(h.min())
    messages = []
    if min_h <= 0:
        messages.append(f"origin not interior: min h = {min_h:.6g}")
    min_f = None
    is_c2plus = False
    if body.smoothness is SmoothnessClass.C2PLUS:
        min_f = float((body.support_second(theta) + h).min())
        is_c2plus = min_f > FOURIER_CONVEXITY_MARGIN
        if not is_c2plus:
            messages.append(f"curvature function not positive: min f = {min_f:.6g}")
    accepted = min_h > 0 and (is_c2plus or body.smoothness is SmoothnessClass.PIECEWISE)
    return BodyDiagnostics(min_h, min_f, is_c2plus, accepted, messages)


def _require(table: dict, key: str, key_path: str):
    if key not in table:
        raise ConfigError(f"{key_path}.{key}: missing required key")
    return table[key]


def body_from_descriptor(descriptor: dict, key_path: str = "body") -> SupportBody2D:
    """Build a body from a configuration table such as ``{kind="ellipse", a=2.0, b=1.0}``.

    Raises:
        ConfigError: Unknown kind or missing keys (the message names the key path).
        BodyValidationError: The parameters describe an invalid body.
    """
    kind = normalize_string(str(_require(descriptor, "kind", key_path)))
    if kind not in VALID_BODY_KINDS:
        raise ConfigError(f"{key_path}.kind: unknown body kind '{descriptor['kind']}', "
                          f"expected one of {VALID_BODY_KINDS}")
    try:
        if kind == "disk":
            return Disk(float(_require(descriptor, "radius", key_path)))
        if kind == "ellipse":
            return Ellipse(float(_require(descriptor, "a", key_path)), float(_require(descriptor, "b", key_path)))
        if kind == "fourier":
            return FourierBody(float(_require(descriptor, "a0", key_path)),
                               tuple(descriptor.get("cos", ())), tuple(descriptor.get("sin", ())))
        if kind == "polygon":
            return PolygonBody(tuple(tuple(v) for v in _require(descriptor, "vertices", key_path)))
        return minkowski_combine(
            (float(c), body_from_descriptor(d, f"{key_path}.terms"))
            for c, d in _require(descriptor, "terms", key_path)
        )
    except ConfigError:
        raise
    except BodyValidationError as err:
        raise type(err)(f"{key_path}: {err}") from err
    except (TypeError, ValueError) as err:
        raise ConfigError(f"{key_path}: {err}") from err
