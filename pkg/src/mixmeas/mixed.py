"""Closed-form mixed measures of planar bodies.

Dilations enter through the scaling relations ``x_{tK} = t x_K`` and
``f_{tK} = t f_K``: the evaluators take ``t`` as a parameter and never build
the body ``tK``. All integrands are evaluated in the log domain, so values of
size ``e^{-phi(r t)}`` far below the double range are returned intact.
"""

import logging
import math
from collections.abc import Callable

import numpy as np
from scipy import optimize

from .common.errors import PreconditionError, SmoothnessError
from .common.log_value import LogSamples, signed_logsumexp
from .common.utilities import angle_grid, golden_section_search, reduce_angle, unit_frame
from .constants import (
    GAUGE_KINK_SCAN_NODES,
    GOLDEN_ANGLE_WIDTH,
    MASS_TOLERANCE,
    MIXED_TOLERANCE,
    PEAK_CURVATURE_STEP,
    PEAK_FLAT_SPREAD,
    PEAK_LADDER,
    PEAK_MAX_WIDTH,
    PEAK_MIN_WIDTH,
    PEAK_SCAN_NODES,
    PEAK_WINDOW,
    TWO_PI,
)
from .models.bodies2d import (
    Disk,
    PolygonBody,
    SmoothnessClass,
    SupportBody2D,
    boundary_points,
    inradius,
    minkowski_combine,
)
from .models.densities import MeasureSpec
from .oracles import body_mass
from .quadrature import AngleEvaluator, QuadResult, circle_integrate, line_integrate
from .results import MixedValue


def _check_t(t: float):
    if not (t > 0 and math.isfinite(t)):
        raise PreconditionError(f"dilation t must be positive and finite, got {t}")


def _peak_breakpoints(exponent: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Panel cuts that resolve the peaks of ``exp(-exponent)`` on the circle.

    Every discrete local minimum of the exponent within ``PEAK_WINDOW`` of the
    smallest sample is refined by golden-section search and surrounded by cuts
    at ``w * PEAK_LADDER``, where ``w = 1/sqrt(exponent'')`` is the width of the
    peak there. The width shrinks like ``1/sqrt(t phi'(t r))``, so a fixed node
    budget cannot follow fast-growing profiles. A nearly flat exponent yields
    no cuts.
    """
    theta = angle_grid(PEAK_SCAN_NODES)
    values = np.asarray(exponent(theta), dtype=float)
    lowest = float(values.min())
    if float(values.max()) - lowest < PEAK_FLAT_SPREAD:
        return np.empty(0)
    step = TWO_PI / PEAK_SCAN_NODES
    local = (values < np.roll(values, 1)) & (values <= np.roll(values, -1))
    candidates = np.flatnonzero(local & (values <= lowest + PEAK_WINDOW))
    if candidates.size == 0:
        return np.empty(0)
    centers, _ = golden_section_search(exponent, theta[candidates] - step, theta[candidates] + step,
                                       GOLDEN_ANGLE_WIDTH)
    centers = np.atleast_1d(np.asarray(centers, dtype=float))
    delta = PEAK_CURVATURE_STEP
    curvature = (exponent(centers + delta) - 2.0 * exponent(centers) + exponent(centers - delta)) / delta ** 2
    widths = np.clip(1.0 / np.sqrt(np.maximum(curvature, 1e-300)), PEAK_MIN_WIDTH, PEAK_MAX_WIDTH)
    offsets = widths[:, None] * np.asarray(PEAK_LADDER)[None, :]
    offsets = np.where(offsets < math.pi, offsets, 0.0)
    cuts = np.concatenate([centers, (centers[:, None] + offsets).ravel(), (centers[:, None] - offsets).ravel()])
    logging.debug(f"peak cuts: {centers.size} peak(s), narrowest width {float(widths.min()):.3e}")
    return reduce_angle(cuts)


def _gauge_kink_normals(K: SupportBody2D, L: SupportBody2D) -> np.ndarray:
    """Normal angles of ``K`` whose boundary point lies on a radial kink of ``L``.

    ``theta -> ||x_K(theta)||_L`` is not differentiable there. The polar angle
    of ``x_K`` increases with ``theta`` since ``K`` contains the origin in its
    interior, so each ray is bracketed on a scan and located by Brent's method.
    """
    rays = L.radial_kinks()
    if rays.size == 0:
        return np.empty(0)
    grid = np.append(angle_grid(GAUGE_KINK_SCAN_NODES), TWO_PI)
    x = boundary_points(K, grid)[0]
    polar = np.unwrap(np.arctan2(x[:, 1], x[:, 0]))
    normals = []
    for ray in rays:
        target = float(polar[0] + reduce_angle(ray - polar[0]))
        i = int(np.clip(np.searchsorted(polar, target), 1, grid.size - 1))

        def offset(theta, target=target):
            point = boundary_points(K, np.array([theta]))[0][0]
            return math.remainder(math.atan2(point[1], point[0]) - target, TWO_PI)

        normals.append(optimize.brentq(offset, grid[i - 1], grid[i], xtol=1e-14))
    return reduce_angle(np.asarray(normals))


def _density_cuts(K: SupportBody2D, measure: MeasureSpec, t: float) -> np.ndarray:
    """Cuts for integrands carrying ``exp(-phi(t ||x_K(theta)||_L))``."""
    if measure.is_debug:
        return np.empty(0)
    L = measure.gauge_body
    phi = measure.phi

    def exponent(theta):
        return phi.value(t * L.gauge(boundary_points(K, theta)[0]))

    return np.concatenate([_gauge_kink_normals(K, L), _peak_breakpoints(exponent)])


def _require_c2plus(body: SupportBody2D, role: str):
    if body.smoothness is not SmoothnessClass.C2PLUS:
        raise SmoothnessError(f"{role} must be C2plus, got a {body.smoothness.value} body")


def mixed_first_integrand(K: SupportBody2D, M: SupportBody2D, measure: MeasureSpec, t: float) -> AngleEvaluator:
    """Log integrand ``c0 h_M exp(-phi(t ||x_K||_L)) t f_K`` of the first-order measure."""
    L = measure.gauge_body
    phi = measure.phi

    def integrand(theta):
        x, _, _, f = boundary_points(K, theta)
        g = L.gauge(x)
        h_m = M.support(theta)[0]
        return LogSamples.positive(
            measure.log_c0 + np.log(h_m) - phi.value(t * g) + math.log(t) + np.log(f)
        )

    return integrand


def _mixed_first_polygon(K: PolygonBody, M: SupportBody2D, measure: MeasureSpec, t: float,
                         tolerance: float) -> MixedValue:
    L = measure.gauge_body
    phi = measure.phi
    logs, evaluations, worst = [], 0, 0.0
    for start, direction, length, normal_angle in K.edges():
        def exponent(s, start=start, direction=direction):
            points = start[None, :] + np.atleast_1d(s)[:, None] * direction[None, :]
            return phi.value(t * L.gauge(points))

        s_star, e_star = golden_section_search(exponent, np.array([0.0]), np.array([length]), 1e-12 * length)
        ends = exponent(np.array([0.0, length]))
        candidates = [(float(e_star[0]), float(s_star[0])), (float(ends[0]), 0.0), (float(ends[1]), length)]
        e_min, s_min = min(candidates)

        def shifted(s, exponent=exponent, e_min=e_min):
            return math.exp(-(float(exponent(s)[0]) - e_min))

        pieces = [(a, b) for a, b in ((0.0, s_min), (s_min, length)) if b - a > 1e-14 * length]
        total = 0.0
        for a, b in pieces:
            result = line_integrate(shifted, a, b, tolerance * 1e-2)
            total += result.value.to_float()
            evaluations += result.nodes_used
            worst = max(worst, result.error_estimate)
        h_m = float(M.support(np.array([normal_angle]))[0][0])
        logs.append(math.log(h_m) + math.log(t) - e_min + math.log(total))

    value = signed_logsumexp(np.ones(len(logs)), logs).scale(measure.log_c0)
    return MixedValue(value, t, QuadResult(value, evaluations, worst))


def mixed_first(K: SupportBody2D, M: SupportBody2D, measure: MeasureSpec, t: float,
                tolerance: float = MIXED_TOLERANCE) -> MixedValue:
    """First-order mixed measure ``mu(tK; M)``.

    For C2plus ``K`` the integral runs over the normal angle,

        c0 * integral h_M(theta) exp(-phi(t ||x_K(theta)||_L)) t f_K(theta) dtheta;

    for a polygon it is the sum over edges of ``h_M(n_e) t`` times the edge
    integral of ``exp(-phi(t ||y||_L))``, each edge split at the minimizer of
    its exponent and integrated adaptively.

    Args:
        K (SupportBody2D): C2plus body or polygon.
        M (SupportBody2D): Any body containing the origin.
        measure (MeasureSpec): Density and gauge body.
        t (float): Dilation, positive.
        tolerance (float): Relative tolerance requested from the quadrature. Defaults to 1e-9.

    Returns:
        MixedValue: Positive value with its quadrature record.

    Raises:
        SmoothnessError: If ``K`` is neither C2plus nor a polygon.
        NumericalFailureError: If the quadrature does not converge.
    """
    _check_t(t)
    if isinstance(K, PolygonBody):
        return _mixed_first_polygon(K, M, measure, t, tolerance)
    _require_c2plus(K, "K")
    cuts = np.concatenate([M.support_kinks(), _density_cuts(K, measure, t)])
    quad = circle_integrate(mixed_first_integrand(K, M, measure, t), cuts, tolerance)
    logging.debug(f"mixed_first t={t}: {quad.value} with {quad.nodes_used} nodes")
    return MixedValue(quad.value, t, quad)


def surface_content(K: SupportBody2D, measure: MeasureSpec, t: float,
                    tolerance: float = MIXED_TOLERANCE) -> MixedValue:
    """Outer Minkowski content of ``tK``: the first-order measure against the unit disk."""
    return mixed_first(K, Disk(1.0), measure, t, tolerance)


def mixed_second_integrand(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, measure: MeasureSpec,
                           t: float) -> AngleEvaluator:
    """Log-domain integrand of ``mu(tA; B, C)``.

    ``c0 exp(-phi(t g)) [h_B h_C - h_B' h_C' - h_B h_C t f_A <grad g, u> phi'(t g)]``
    with ``g = ||x_A||_L``. The damping term is formed in the log domain so that
    ``phi'`` may be huge while ``exp(-phi)`` is tiny.
    """
    L = measure.gauge_body
    phi = measure.phi

    def integrand(theta):
        x, _, _, f = boundary_points(A, theta)
        g = L.gauge(x)
        h_b, hp_b = B.support(theta)
        h_c, hp_c = C.support(theta)
        body = LogSamples.from_array(h_b * h_c).add(LogSamples.from_array(-hp_b * hp_c))
        if not measure.is_debug:
            u, _ = unit_frame(theta)
            pairing = np.einsum("...i,...i->...", L.gauge_gradient(x), u)
            damping = LogSamples.from_array(h_b * h_c * t * f * pairing).shift(phi.log_prime(t * g))
            body = body.add(damping.negate())
        return body.shift(measure.log_c0 - phi.value(t * g))

    return integrand


def mixed_second(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, measure: MeasureSpec, t: float,
                 tolerance: float = MIXED_TOLERANCE) -> MixedValue:
    """Planar second-order mixed measure ``mu(tA; B, C)``.

    ``A`` and the gauge body must be C2plus. Piecewise-smooth ``B`` or ``C`` are
    integrated with Gauss-Legendre panels between their kinks (nodes never sit on
    a kink) and the result is flagged ``outside_hypotheses``.

    Raises:
        SmoothnessError: If ``A`` or (outside the debug density) the gauge body is not C2plus.
        AmbiguousMaximizerError: If a gauge gradient is ambiguous.
        NumericalFailureError: If the quadrature does not converge.
    """
    _check_t(t)
    _require_c2plus(A, "A")
    if not measure.is_debug:
        _require_c2plus(measure.gauge_body, "gauge body L")
    outside = any(body.smoothness is not SmoothnessClass.C2PLUS for body in (B, C))
    if outside:
        logging.warning("mixed_second: B or C is only piecewise smooth; the value lies outside "
                        "the C2 hypotheses of the second-order representation")
    cuts = np.concatenate([B.support_kinks(), C.support_kinks(), _density_cuts(A, measure, t)])
    quad = circle_integrate(mixed_second_integrand(A, B, C, measure, t), cuts, tolerance)
    logging.debug(f"mixed_second t={t}: {quad.value} with {quad.nodes_used} nodes")
    return MixedValue(quad.value, t, quad, outside)


def gaussian_second_integrand(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, t: float) -> AngleEvaluator:
    """Integrand of the standard Gaussian second-order measure of ``tA``."""
    def integrand(theta):
        _, h, hp, f = boundary_points(A, theta)
        h_b, hp_b = B.support(theta)
        h_c, hp_c = C.support(theta)
        body = LogSamples.from_array(h_b * h_c).add(LogSamples.from_array(-hp_b * hp_c))
        damping = LogSamples.from_array(h_b * h_c * t * t * h * f)
        energy = 0.5 * t * t * (h * h + hp * hp)
        return body.add(damping.negate()).shift(-math.log(TWO_PI) - energy)

    return integrand


def gaussian_second(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, t: float,
                    tolerance: float = MIXED_TOLERANCE) -> MixedValue:
    """Second-order measure for the standard Gaussian, written with support data only.

    ``(1/2pi) integral exp(-t^2 (h^2 + h'^2)/2) [h_B h_C (1 - t^2 h_A f_A) - h_B' h_C'] dtheta``
    """
    _check_t(t)
    _require_c2plus(A, "A")
    outside = any(body.smoothness is not SmoothnessClass.C2PLUS for body in (B, C))
    def energy(theta):
        _, h, hp, _ = boundary_points(A, theta)
        return 0.5 * t * t * (h * h + hp * hp)

    cuts = np.concatenate([B.support_kinks(), C.support_kinks(), _peak_breakpoints(energy)])
    quad = circle_integrate(gaussian_second_integrand(A, B, C, t), cuts, tolerance)
    return MixedValue(quad.value, t, quad, outside)


def second_sign_threshold(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, measure: MeasureSpec,
                          t_lo: float, t_hi: float) -> float:
    """Dilation where ``mu(tA; B, C)`` changes sign, located by Brent's method to 1e-12.

    The value is rescaled by ``exp(phi(r t))``, ``r`` the L-inradius of ``A``, so
    the bracketing function stays representable.

    Raises:
        PreconditionError: If the bracket does not contain a sign change.
    """
    r = inradius(A, measure.gauge_body).r

    def scaled(t):
        value = mixed_second(A, B, C, measure, t).value
        if value.sign == 0:
            return 0.0
        return value.sign * math.exp(min(value.log_abs + float(measure.phi.value(r * t)), 700.0))

    lo, hi = scaled(t_lo), scaled(t_hi)
    if lo == 0.0:
        return float(t_lo)
    if hi == 0.0:
        return float(t_hi)
    if np.sign(lo) == np.sign(hi):
        raise PreconditionError(f"no sign change of the second-order measure on [{t_lo}, {t_hi}]")
    return float(optimize.brentq(scaled, t_lo, t_hi, xtol=1e-12))


def lebesgue_mixed_area(K: SupportBody2D, M: SupportBody2D) -> float:
    """Planar mixed area ``V(K, M) = (1/2) integral h_M f_K`` (edge sum for polygons)."""
    if isinstance(K, PolygonBody):
        h_m = M.support(K.support_kinks())[0]
        return 0.5 * float(np.sum(h_m * K.edge_lengths))
    _require_c2plus(K, "K")

    def integrand(theta):
        return LogSamples.positive(np.log(M.support(theta)[0]) + np.log(K.curvature(theta)) - math.log(2.0))

    return circle_integrate(integrand, M.support_kinks(), MASS_TOLERANCE).value.to_float()


def perimeter(K: SupportBody2D) -> float:
    return 2.0 * lebesgue_mixed_area(K, Disk(1.0))


def steiner_check(K: SupportBody2D, M: SupportBody2D, t_grid) -> float:
    """Largest deviation of ``area(K + tM)`` from its Steiner polynomial on the grid."""
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if np.any(t_grid < 0):
        raise PreconditionError("Steiner check needs t >= 0")
    lebesgue = MeasureSpec.lebesgue()
    area_k = body_mass(K, lebesgue).to_float()
    area_m = body_mass(M, lebesgue).to_float()
    mixed = lebesgue_mixed_area(K, M)
    deviation = 0.0
    for t in t_grid:
        grown = minkowski_combine([(1.0, K), (float(t), M)])
        expected = area_k + 2.0 * t * mixed + t * t * area_m
        deviation = max(deviation, abs(body_mass(grown, lebesgue).to_float() - expected))
    logging.debug(f"steiner_check: max deviation {deviation:.3e}")
    return deviation


def lebesgue_second_check(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D) -> float:
    """``|mu(A; B, C) - 2 V(B, C)|`` for the debug density, where the measure is the mixed area."""
    value = mixed_second(A, B, C, MeasureSpec.lebesgue(), 1.0, tolerance=MASS_TOLERANCE).to_float()
    first, other = (B, C) if (isinstance(B, PolygonBody) or B.smoothness is SmoothnessClass.C2PLUS) else (C, B)
    return abs(value - 2.0 * lebesgue_mixed_area(first, other))

