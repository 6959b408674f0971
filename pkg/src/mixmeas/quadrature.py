"""Deterministic integration and minimization primitives.

Every integral in mixmeas reduces to one dimension: angles on the circle
(periodic trapezoid, or Gauss-Legendre panels between kinks), radial and edge
integrals on a line (adaptive QUADPACK through ``scipy.integrate.quad``), and
minima of functions of the angle.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .common.errors import NumericalFailureError
from .common.log_value import LogSamples, LogValue, relative_difference
from .common.utilities import angle_grid, cluster_circular, golden_section_search, reduce_angle
from .constants import (
    GOLDEN_ANGLE_WIDTH,
    LINE_QUAD_LIMIT,
    MINIMIZE_BASIN_TOLERANCE,
    MINIMIZE_SCAN_NODES,
    PANEL_MAX_ORDER,
    PANEL_MIN_ORDER,
    PERIODIC_MAX_NODES,
    PERIODIC_MIN_NODES,
    TRUNCATION_FLOOR,
    TWO_PI,
)

AngleEvaluator = Callable[[np.ndarray], LogSamples]


@dataclass(frozen=True)
class QuadResult:
    """Outcome of a quadrature.

    Attributes
    ----------
    value : LogValue
        The integral.
    nodes_used : int
        Integrand evaluations at the accepted level (QUADPACK evaluations for line integrals).
    error_estimate : float
        Relative change between the last two refinement levels.
    """

    value: LogValue
    nodes_used: int
    error_estimate: float


class MinimizeResult(NamedTuple):
    """Global minimum of a function on the circle and its (deduplicated) minimizers."""

    theta_star: float
    min_value: float
    argmin_set: list[float]


def _accept(value: LogValue, previous: LogValue, l1: LogValue, nodes: int, tolerance: float,
            label: str) -> QuadResult | None:
    if l1.sign == 0:
        return QuadResult(LogValue.zero(), nodes, 0.0)
    change = relative_difference(value, previous, l1)
    logging.debug(f"{label}: {nodes} nodes, relative change {change:.3e}")
    if change < tolerance:
        return QuadResult(value, nodes, change)
    return None


def periodic_integrate(f: AngleEvaluator, tolerance: float = 1e-10, max_nodes: int = PERIODIC_MAX_NODES,
                       min_nodes: int = PERIODIC_MIN_NODES, offset: float = 0.0) -> QuadResult:
    """Integrate a 2*pi-periodic function with the trapezoid rule and node doubling.

    Args:
        f: Vectorized evaluator returning :class:`LogSamples` at an array of angles.
        tolerance (float): Accept when the change between two levels, relative to the
            integral of ``|f|``, falls below this value.
        max_nodes (int): Largest node count tried. Defaults to 2**16.
        min_nodes (int): Starting node count. Defaults to 64.
        offset (float): Rotation of the node set, used to keep nodes off known kinks.

    Returns:
        QuadResult: The accepted estimate.

    Raises:
        NumericalFailureError: If ``max_nodes`` is reached first; the last estimate is attached.

    Notes:
        Samples of previous levels are reused: each doubling only evaluates the
        midpoints. Sums are signed log-sum-exp accumulations, so integrands of
        size ``e^{-200}`` and sign-changing integrands are handled alike.
    """
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    n = min_nodes
    samples = f(angle_grid(n, offset))
    signs, logs, scales = [samples.sign], [samples.log_abs], [samples.scale_or_abs]
    previous = samples.total(math.log(TWO_PI / n))
    while True:
        if n >= max_nodes:
            raise NumericalFailureError(
                f"Periodic trapezoid did not converge to {tolerance:g} with {n} nodes",
                QuadResult(previous, n, math.nan),
            )
        midpoints = f(offset + TWO_PI * (np.arange(n) + 0.5) / n)
        signs.append(midpoints.sign)
        logs.append(midpoints.log_abs)
        scales.append(midpoints.scale_or_abs)
        n *= 2
        pooled = LogSamples(np.concatenate(signs), np.concatenate(logs), np.concatenate(scales))
        value = pooled.total(math.log(TWO_PI / n))
        l1 = pooled.magnitude_total(math.log(TWO_PI / n))
        accepted = _accept(value, previous, l1, n, tolerance, "periodic_integrate")
        if accepted is not None:
            return accepted
        previous = value


@lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def panel_integrate(f: AngleEvaluator, breakpoints, tolerance: float = 1e-10,
                    min_order: int = PANEL_MIN_ORDER, max_order: int = PANEL_MAX_ORDER) -> QuadResult:
    """Integrate over ``[0, 2*pi)`` with Gauss-Legendre panels between kinks.

    Integrands that are smooth except at known angles (support functions of
    polygons, radial functions of bodies with flat boundary pieces) lose the
    spectral accuracy of the trapezoid rule; splitting at the kinks restores it.

    Args:
        f: Vectorized evaluator returning :class:`LogSamples`.
        breakpoints: Kink angles. An empty set falls back to :func:`periodic_integrate`.
        tolerance (float): Relative-change acceptance threshold, as in :func:`periodic_integrate`.
        min_order, max_order (int): Range of the per-panel order, doubled at each level.

    Returns:
        QuadResult: The accepted estimate.
    """
    cuts = np.unique(reduce_angle(np.asarray(breakpoints, dtype=float)))
    if cuts.size == 0:
        return periodic_integrate(f, tolerance)
    starts = cuts
    ends = np.append(cuts[1:], cuts[0] + TWO_PI)
    keep = ends - starts > 1e-14
    starts, ends = starts[keep], ends[keep]
    half = 0.5 * (ends - starts)
    mid = 0.5 * (ends + starts)

    order = min_order
    previous = None
    while order <= max_order:
        nodes, weights = _gauss_legendre(order)
        theta = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        log_w = np.log(half[:, None] * weights[None, :]).ravel()
        samples = f(theta).shift(log_w)
        value = samples.total()
        if previous is not None:
            accepted = _accept(value, previous, samples.magnitude_total(), theta.size, tolerance,
                               "panel_integrate")
            if accepted is not None:
                return accepted
        previous = value
        order *= 2
    raise NumericalFailureError(
        f"Panel quadrature did not converge to {tolerance:g} with order {max_order}",
        QuadResult(previous, int(starts.size * max_order), math.nan),
    )


def circle_integrate(f: AngleEvaluator, breakpoints=(), tolerance: float = 1e-10,
                     max_nodes: int = PERIODIC_MAX_NODES) -> QuadResult:
    """Dispatch to the trapezoid rule or to panels depending on the kink set."""
    if len(breakpoints) == 0:
        return periodic_integrate(f, tolerance, max_nodes=max_nodes)
    return panel_integrate(f, breakpoints, tolerance)


def _truncation_point(f: Callable[[float], float], a: float) -> float:
    x = a + 1.0
    for _ in range(1100):
        if abs(f(x)) < TRUNCATION_FLOOR:
            return x
        x = a + 2.0 * (x - a)
    raise NumericalFailureError(f"Integrand does not decay below {TRUNCATION_FLOOR:g}")


def line_integrate(f: Callable[[float], float], a: float, b: float, tolerance: float = 1e-12) -> QuadResult:
    """Adaptive integral of a scalar function on ``[a, b]``, ``b`` possibly infinite.

    Uses QUADPACK (adaptive Gauss-Kronrod bisection) through ``scipy.integrate.quad``.
    An infinite upper limit is replaced by the first point of the sequence
    ``a + 2^k`` where ``|f|`` falls below 1e-300.

    Args:
        f: Scalar integrand.
        a (float): Lower limit.
        b (float): Upper limit, ``math.inf`` allowed.
        tolerance (float): Absolute and relative tolerance requested from QUADPACK.

    Returns:
        QuadResult: Value with its evaluation count and relative error estimate.

    Raises:
        ValueError: If ``a >= b``.
        NumericalFailureError: If QUADPACK reports a failure with an error above tolerance.
    """
    if not a < b:
        raise ValueError(f"line_integrate needs a < b, got a={a}, b={b}")
    upper = _truncation_point(f, a) if math.isinf(b) else b
    out = integrate.quad(f, a, upper, epsabs=tolerance, epsrel=tolerance, limit=LINE_QUAD_LIMIT,
                         full_output=1)
    value, abserr, info = out[0], out[1], out[2]
    if len(out) > 3 and abserr > 10.0 * max(tolerance, tolerance * abs(value)):
        raise NumericalFailureError(f"Line quadrature failed on [{a}, {upper}]: {out[3]}",
                                    QuadResult(LogValue.from_float(value), info['neval'], math.nan))
    relative = abserr / abs(value) if value != 0 else abserr
    return QuadResult(LogValue.from_float(value), int(info['neval']), float(relative))


def circle_minimize(f: Callable[[np.ndarray], np.ndarray], n_grid: int = MINIMIZE_SCAN_NODES,
                    basin_tolerance: float = MINIMIZE_BASIN_TOLERANCE) -> MinimizeResult:
    """Global minimum of a continuous function of the angle.

    A ``n_grid``-node scan selects every discrete local minimum whose value is
    within ``basin_tolerance * max(1, |min|)`` of the smallest sample; each of
    them is refined by golden-section search in its two neighbouring cells.

    Args:
        f: Vectorized function of the angle.
        n_grid (int): Scan size. Defaults to 4096.
        basin_tolerance (float): Relative window for basins and for the argmin set.

    Returns:
        MinimizeResult: Minimizer, minimum and the deduplicated argmin set.
    """
    theta = angle_grid(n_grid)
    values = np.asarray(f(theta), dtype=float)
    step = TWO_PI / n_grid
    window = basin_tolerance * max(1.0, abs(float(values.min())))
    local = (values <= np.roll(values, 1)) & (values <= np.roll(values, -1))
    candidates = np.flatnonzero(local & (values <= values.min() + window))

    refined, refined_values = golden_section_search(
        f, theta[candidates] - step, theta[candidates] + step, GOLDEN_ANGLE_WIDTH
    )
    use_grid = values[candidates] < refined_values
    refined = np.where(use_grid, theta[candidates], refined)
    refined_values = np.where(use_grid, values[candidates], refined_values)

    best = int(np.argmin(refined_values))
    min_value = float(refined_values[best])
    keep = refined_values <= min_value + window
    argmin = np.sort(reduce_angle(refined[keep]))
    deduplicated = [float(a) for i, a in enumerate(argmin) if i == 0 or a - argmin[i - 1] > 1e-9]
    return MinimizeResult(float(reduce_angle(refined[best])), min_value, deduplicated)


def argmin_clusters(angles, n_grid: int = MINIMIZE_SCAN_NODES) -> list[np.ndarray]:
    """Group minimizers into contact arcs (gap of 1.5 grid cells)."""
    return cluster_circular(angles, 1.5 * TWO_PI / n_grid)
