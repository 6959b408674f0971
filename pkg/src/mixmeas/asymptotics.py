"""Rate sweeps for large dilations and the comparison harness.

Every sweep reports ``ln|mu(t)| / phi(r t)`` with ``r`` the L-inradius of the
dilated body; the large-deviation statements say these ratios tend to ``-1``.
Ratios are diagnostics: the sweeps flag the trend but never assert a limit.
"""

import logging
import math

import numpy as np

from .common.errors import (
    InvariantViolationError,
    PreconditionError,
    ThresholdError,
    TailRangeError,
    VerificationError,
)
from .common.log_value import LogValue
from .common.utilities import angle_grid
from .constants import (
    INRADIUS_REFINEMENT_TOLERANCE,
    RATE_BAND_LINEAR,
    RATE_BAND_POWER,
    SWEEP_T_RANGE,
    TAIL_FLOOR,
    VALIDATION_GRID_NODES,
    VERDICT_HOLDS,
    VERDICT_HYPOTHESIS_FAILS,
    VERDICT_INCONCLUSIVE,
    VERDICT_VIOLATED,
)
from .mixed import gaussian_second, mixed_first, mixed_second
from .models.bodies2d import Disk, SmoothnessClass, SupportBody2D, boundary_points, inradius
from .models.densities import LinearPhi, MeasureSpec, PhiFunction, growth_condition_report
from .oracles import polar_mass
from .quadrature import circle_minimize
from .results import ComparisonReport, MinEnergyResult, MixedValue, RateSweep


def _validate_grid(t_grid) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.size == 0 or np.any(t <= 0) or np.any(np.diff(t) <= 0) or not np.all(np.isfinite(t)):
        raise PreconditionError("t grid must be a nonempty increasing sequence of positive reals")
    return t


def rate_band(phi: PhiFunction) -> float:
    """Tolerance on ``|ratio + 1|`` at the end of a sweep; linear profiles converge slowest."""
    return RATE_BAND_LINEAR if isinstance(phi, LinearPhi) else RATE_BAND_POWER


def _assemble(kind: str, t: np.ndarray, values: list[LogValue], nodes: list[int], rate_r: float,
              phi_rt: np.ndarray, band: float, log_prime_rt: np.ndarray | None = None) -> RateSweep:
    log_abs = np.array([v.log_abs for v in values])
    defined = phi_rt > 0
    with np.errstate(divide='ignore', invalid='ignore'):
        ratios = np.where(defined, log_abs / phi_rt, np.nan)
        corrected = None
        if log_prime_rt is not None:
            denominator = phi_rt - log_prime_rt
            corrected = np.where(denominator > 0, log_abs / denominator, np.nan)
    trend = True
    live = np.flatnonzero(defined)
    if live.size >= 2:
        trend = bool(abs(ratios[live[-1]] + 1.0) < abs(ratios[live[0]] + 1.0))
        if not trend:
            logging.warning(f"{kind} sweep: ratio does not move towards -1 across the grid")
    converged = bool(live.size) and bool(abs(ratios[live[-1]] + 1.0) <= band)
    logging.info(f"{kind} sweep over {t.size} points, r={rate_r:.12g}, last ratio {ratios[-1]:.6f}, "
                 f"{'within' if converged else 'outside'} the band {band:g} of -1")
    return RateSweep(kind, t, values, ratios, defined, phi_rt, rate_r, np.asarray(nodes, dtype=int),
                     corrected, trend, converged)


def _warn_outside_range(t: np.ndarray):
    lo, hi = SWEEP_T_RANGE
    if t[0] < lo or t[-1] > hi:
        logging.warning(f"t grid [{t[0]:g}, {t[-1]:g}] leaves the recommended range [{lo:g}, {hi:g}]")


def rate_sweep_first(K: SupportBody2D, M: SupportBody2D, measure: MeasureSpec, t_grid) -> RateSweep:
    """Ratios ``ln mu(tK; M) / phi(r(K, L) t)`` on the grid.

    Raises:
        InvariantViolationError: If a first-order value is not positive.
    """
    t = _validate_grid(t_grid)
    _warn_outside_range(t)
    r = inradius(K, measure.gauge_body).r
    results: list[MixedValue] = []
    for ti in t:
        result = mixed_first(K, M, measure, float(ti))
        if result.sign != 1:
            raise InvariantViolationError(f"first-order mixed measure has sign {result.sign} at t={ti!r}")
        results.append(result)
    phi_rt = np.asarray(measure.phi.value(r * t), dtype=float)
    return _assemble("first", t, [v.value for v in results], [v.nodes_used for v in results], r, phi_rt,
                     rate_band(measure.phi))


def _second_sweep(kind: str, evaluate, t: np.ndarray, r: float, phi_rt: np.ndarray, band: float,
                  log_prime_rt: np.ndarray) -> RateSweep:
    results: list[MixedValue] = []
    for ti in t:
        result = evaluate(float(ti))
        if result.sign != -1:
            raise ThresholdError(float(ti), result.value)
        results.append(result)
    return _assemble(kind, t, [v.value for v in results], [v.nodes_used for v in results], r, phi_rt,
                     band, log_prime_rt)


def rate_sweep_second(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, measure: MeasureSpec,
                      t_grid) -> RateSweep:
    """Ratios ``ln(-mu(tA; B, C)) / phi(r(A, L) t)``.

    Also reports the corrected ratio ``ln(-mu) / (phi(rt) - ln phi'(rt))``,
    which removes the polynomial prefactor ``phi'`` of the second-order measure.

    Raises:
        ThresholdError: If the value is not negative at some grid point.
    """
    t = _validate_grid(t_grid)
    _warn_outside_range(t)
    growth_condition_report(measure.phi, t)
    r = inradius(A, measure.gauge_body).r
    phi_rt = np.asarray(measure.phi.value(r * t), dtype=float)
    log_prime_rt = np.asarray(measure.phi.log_prime(r * t), dtype=float)
    return _second_sweep("second", lambda ti: mixed_second(A, B, C, measure, ti), t, r, phi_rt,
                         rate_band(measure.phi), log_prime_rt)


def rate_sweep_gaussian_second(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, t_grid) -> RateSweep:
    """Gaussian second-order sweep with ``phi(rt) = r^2 t^2 / 2``, ``r`` the disk inradius of ``A``."""
    t = _validate_grid(t_grid)
    _warn_outside_range(t)
    r = inradius(A, Disk(1.0)).r
    phi_rt = 0.5 * (r * t) ** 2
    return _second_sweep("gauss", lambda ti: gaussian_second(A, B, C, ti), t, r, phi_rt,
                         RATE_BAND_POWER, np.log(r * t))


def min_energy(A: SupportBody2D) -> MinEnergyResult:
    """Minimum over normals of ``h^2 + h'^2``, the squared distance to the nearest boundary point."""
    if A.smoothness is not SmoothnessClass.C2PLUS:
        raise PreconditionError("min_energy needs a C2plus body")

    def energy(theta):
        h, hp = A.support(theta)
        return h * h + hp * hp

    result = circle_minimize(energy)
    return MinEnergyResult(result.min_value, result.argmin_set)


def min_boundary_gauge(A: SupportBody2D, L: SupportBody2D) -> float:
    """``min_theta ||x_A(theta)||_L``; equals the L-inradius of ``A`` for C2plus pairs."""
    return circle_minimize(lambda theta: L.gauge(boundary_points(A, theta)[0])).min_value


def tail_rate(K: SupportBody2D, measure: MeasureSpec, t_grid) -> RateSweep:
    """Ratios ``ln mu(R^2 \\ tK) / phi(r(K, L) t)`` for a normalized measure.

    Raises:
        PreconditionError: If the measure is not normalized.
        TailRangeError: If the tail falls below 1e-290; the largest usable grid dilation is reported.
    """
    if not measure.normalized:
        raise PreconditionError("tail_rate needs a normalized measure (set normalized = true)")
    t = _validate_grid(t_grid)
    r = inradius(K, measure.gauge_body).r
    values, nodes = [], []
    last_usable = math.nan
    for ti in t:
        quad = polar_mass(K, measure, float(ti), tail=True)
        if quad.value.sign != 1 or quad.value.log_abs < math.log(TAIL_FLOOR):
            raise TailRangeError(float(ti), last_usable)
        if quad.value.log_abs >= 0.0:
            raise InvariantViolationError(f"tail mass {quad.value.to_float()!r} at t={ti!r} is not below 1")
        values.append(quad.value)
        nodes.append(quad.nodes_used)
        last_usable = float(ti)
    phi_rt = np.asarray(measure.phi.value(r * t), dtype=float)
    return _assemble("tail", t, values, nodes, r, phi_rt, rate_band(measure.phi))


def support_inclusion(inner: SupportBody2D, outer: SupportBody2D, scale: float = 1.0) -> bool:
    """Whether ``scale * inner`` lies in ``outer``: ``scale h_inner <= h_outer`` on 4096 angles."""
    theta = angle_grid(VALIDATION_GRID_NODES)
    h_in = scale * inner.support(theta)[0]
    h_out = outer.support(theta)[0]
    return bool(np.all(h_in <= h_out + 1e-12 * np.maximum(1.0, np.abs(h_out))))


def comparison_check(K: SupportBody2D, L: SupportBody2D, R: float, M: SupportBody2D, measure: MeasureSpec,
                     t_grid) -> ComparisonReport:
    """Test ``mu(t R L; M) >= mu(t K; M)`` on the grid next to the inclusion ``R L in K``.

    Verdicts:

    * ``HOLDS``: the inequality holds on the grid and ``R <= r(K, L)``.
    * ``VIOLATED``: ``R > r(K, L)`` and a grid dilation breaks the inequality.
    * ``INCONCLUSIVE``: ``R > r(K, L)`` but no violation was found on the grid.
    * ``HYPOTHESIS_FAILS``: ``R <= r(K, L)`` and the inequality already fails on the grid.

    Raises:
        PreconditionError: If ``R <= 0``.
        VerificationError: If ``R <= r(K, L)`` while the support inclusion test fails.
    """
    if not R > 0:
        raise PreconditionError(f"R must be positive, got {R}")
    t = _validate_grid(t_grid)
    r = inradius(K, L).r
    inclusion = support_inclusion(L, K, R)
    within = R <= r + INRADIUS_REFINEMENT_TOLERANCE * max(1.0, r)
    if within and not inclusion:
        raise VerificationError(f"R={R!r} <= r(K,L)={r!r} but R L is not inside K on the support grid")

    log_lhs = np.array([mixed_first(L, M, measure, float(R * ti)).log_abs for ti in t])
    log_rhs = np.array([mixed_first(K, M, measure, float(ti)).log_abs for ti in t])
    holds = log_lhs >= log_rhs
    violations = np.flatnonzero(~holds)
    first_violation = float(t[violations[0]]) if violations.size else None

    if within:
        verdict = VERDICT_HOLDS if holds.all() else VERDICT_HYPOTHESIS_FAILS
    else:
        verdict = VERDICT_VIOLATED if violations.size else VERDICT_INCONCLUSIVE
    logging.info(f"comparison R={R:g}, r(K,L)={r:.12g}: {verdict}")
    return ComparisonReport(R, r, inclusion, bool(holds.all()), first_violation, float(t[-1]), verdict,
                            t, log_lhs, log_rhs)
