"""Brute-force oracles built straight from the definitions.

Mixed measures are derivatives of the measure of Minkowski combinations, so
each closed-form path in :mod:`mixmeas.mixed` has a finite-difference twin
here. Masses are computed in polar coordinates around the origin:

    mu(s C) = c0 * integral g(theta)^-2 Psi(s rho_C(theta) g(theta)) dtheta,   g = ||u||_L.

For densities of finite mass, differences of masses are taken as differences of
complement (tail) masses, which carry the same information without cancelling
against the total mass.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .common.errors import PreconditionError, SignificanceLossError
from .common.log_value import LogSamples, LogValue, signed_logsumexp
from .common.utilities import angle_grid, richardson_extrapolate, unit_frame
from .constants import (
    BRUTEFORCE_MIN_NODES,
    DEFAULT_FD_STEPS,
    DILATION_FD_STEP,
    FD_ERROR_POWER,
    GAUGE_FD_STEP,
    MASS_TOLERANCE,
    MIN_FD_STEP,
    SIGNIFICANCE_FLOOR,
)
from .models.bodies2d import SupportBody2D, minkowski_combine
from .models.densities import MeasureSpec
from .quadrature import QuadResult, circle_integrate


@dataclass(frozen=True)
class StepSchedule:
    """Finite-difference steps and whether to Richardson-extrapolate over them.

    Attributes
    ----------
    steps : tuple[float, ...]
        Strictly decreasing steps, each larger than 1e-6.
    extrapolate : bool
        Combine the estimates by Richardson extrapolation; otherwise the
        estimate at the smallest step is returned.
    """

    steps: tuple[float, ...] = DEFAULT_FD_STEPS
    extrapolate: bool = True

    def __post_init__(self):
        steps = tuple(float(s) for s in self.steps)
        if not steps:
            raise PreconditionError("step schedule is empty")
        if any(s <= MIN_FD_STEP for s in steps):
            raise PreconditionError(f"finite-difference steps must exceed {MIN_FD_STEP:g}, got {steps}")
        if any(b >= a for a, b in zip(steps, steps[1:])):
            raise PreconditionError(f"finite-difference steps must be strictly decreasing, got {steps}")
        object.__setattr__(self, "steps", steps)


def polar_mass(body: SupportBody2D, measure: MeasureSpec, scale: float = 1.0, tail: bool = False) -> QuadResult:
    """Mass of ``scale * body`` (or of its complement when ``tail``) with the quadrature record.

    Raises:
        PreconditionError: If ``scale <= 0``, or a tail is requested for the debug density.
        NumericalFailureError: If the angular quadrature does not converge.
    """
    if not scale > 0:
        raise PreconditionError(f"scale must be positive, got {scale}")
    L = measure.gauge_body
    phi = measure.phi

    def integrand(theta):
        u, _ = unit_frame(theta)
        g = L.gauge(u)
        x = scale * body.radial(theta) * g
        if tail:
            log_kernel = phi.log_radial_tail(x)
        else:
            with np.errstate(divide='ignore'):
                log_kernel = np.log(phi.radial_mass(x))
        return LogSamples.positive(measure.log_c0 - 2.0 * np.log(g) + log_kernel)

    kinks = np.concatenate([body.radial_kinks(), L.radial_kinks()])
    return circle_integrate(integrand, kinks, MASS_TOLERANCE)


def body_mass(body: SupportBody2D, measure: MeasureSpec, scale: float = 1.0) -> LogValue:
    """``mu(scale * body)`` by polar coordinates."""
    return polar_mass(body, measure, scale).value


def body_tail_mass(body: SupportBody2D, measure: MeasureSpec, scale: float = 1.0) -> LogValue:
    """``mu(R^2 \\ scale * body)`` through the complement radial kernel."""
    return polar_mass(body, measure, scale, tail=True).value


def _mass_term(body: SupportBody2D, measure: MeasureSpec, scale: float = 1.0) -> LogValue:
    # equal to the mass up to an additive constant that cancels in every stencil
    if measure.is_debug:
        return body_mass(body, measure, scale)
    return body_tail_mass(body, measure, scale).negate()


def _significant(difference: LogValue, step: float, label: str) -> LogValue:
    if difference.sign == 0 or difference.log_abs < math.log(SIGNIFICANCE_FLOOR):
        raise SignificanceLossError(
            f"{label}: mass difference at step {step:g} is below {SIGNIFICANCE_FLOOR:g}", difference
        )
    return difference


def _extrapolate(steps, estimates: list[LogValue], power: int) -> LogValue:
    """Richardson extrapolation carried out on mantissas relative to the largest estimate."""
    live = [e.log_abs for e in estimates if e.sign != 0]
    if not live:
        return LogValue.zero()
    ref = max(live)
    mantissas = [e.sign * math.exp(e.log_abs - ref) if e.sign else 0.0 for e in estimates]
    return LogValue.from_float(richardson_extrapolate(steps, mantissas, power=power)).scale(ref)


def _combine(schedule: StepSchedule, estimates: list[LogValue], power: int = FD_ERROR_POWER) -> LogValue:
    if not schedule.extrapolate or len(estimates) == 1:
        return estimates[-1]
    return _extrapolate(schedule.steps, estimates, power)


def fd_first(K: SupportBody2D, M: SupportBody2D, measure: MeasureSpec, t: float,
             schedule: StepSchedule | None = None) -> LogValue:
    """``[mu(tK + eps M) - mu(tK)] / eps`` over the schedule, extrapolated to ``eps = 0``.

    Raises:
        SignificanceLossError: If a difference falls below 1e-280 in magnitude.
    """
    schedule = schedule or StepSchedule()
    base = _mass_term(K, measure, t)
    estimates = []
    for eps in schedule.steps:
        grown = _mass_term(minkowski_combine([(t, K), (eps, M)]), measure)
        difference = _significant(grown.minus(base), eps, "fd_first")
        estimates.append(difference.scale(-math.log(eps)))
        logging.debug(f"fd_first t={t}: eps={eps:g} -> {estimates[-1]}")
    return _combine(schedule, estimates)


def fd_second(A: SupportBody2D, B: SupportBody2D, C: SupportBody2D, measure: MeasureSpec, t: float,
              schedule: StepSchedule | None = None) -> LogValue:
    """Mixed second difference ``[mu(tA+sB+sC) - mu(tA+sB) - mu(tA+sC) + mu(tA)] / s^2``.

    The forward stencil has a first-order error in ``s``; the extrapolation
    removes the orders ``s`` and ``s^2``.
    """
    schedule = schedule or StepSchedule()
    base = _mass_term(A, measure, t)
    estimates = []
    for s in schedule.steps:
        both = _mass_term(minkowski_combine([(t, A), (s, B), (s, C)]), measure)
        with_b = _mass_term(minkowski_combine([(t, A), (s, B)]), measure)
        with_c = _mass_term(minkowski_combine([(t, A), (s, C)]), measure)
        terms = [both, with_b, with_c, base]
        difference = signed_logsumexp(
            [term.sign * sign for term, sign in zip(terms, (1, -1, -1, 1))],
            [term.log_abs for term in terms],
        )
        difference = _significant(difference, s, "fd_second")
        estimates.append(difference.scale(-2.0 * math.log(s)))
        logging.debug(f"fd_second t={t}: s={s:g} -> {estimates[-1]}")
    return _combine(schedule, estimates)


def gauge_gradient_fd(L: SupportBody2D, x, h: float = GAUGE_FD_STEP) -> np.ndarray:
    """Central-difference gradient of the gauge with steps ``h|x|`` and ``h|x|/2``, extrapolated."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise PreconditionError("gauge gradient is undefined at the origin")
    step = h * float(np.hypot(*x))
    steps = (step, step / 2.0)
    offsets = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    estimates = []
    for dx in steps:
        g = L.gauge(x[None, :] + dx * offsets)
        estimates.append(np.array([g[0] - g[1], g[2] - g[3]]) / (2.0 * dx))
    return np.array([
        richardson_extrapolate(steps, [e[i] for e in estimates], power=2) for i in range(2)
    ])


def inradius_bruteforce(K: SupportBody2D, L: SupportBody2D, n_grid: int = 10 ** 5) -> float:
    """Minimum of ``h_K / h_L`` over ``n_grid`` equispaced angles, without refinement."""
    if n_grid < BRUTEFORCE_MIN_NODES:
        raise PreconditionError(f"brute-force inradius needs at least {BRUTEFORCE_MIN_NODES} angles, got {n_grid}")
    theta = angle_grid(n_grid)
    return float(np.min(K.support(theta)[0] / L.support(theta)[0]))


def dilation_derivative(K: SupportBody2D, measure: MeasureSpec, t: float, h: float = DILATION_FD_STEP) -> LogValue:
    """``d/dt mu(tK)`` by central differences with steps ``h`` and ``h/2``, extrapolated.

    For ``M = K`` this equals ``mixed_first(K, K, measure, t)``.
    """
    if not (t > 0 and 0 < h < t):
        raise PreconditionError(f"dilation derivative needs 0 < h < t, got t={t}, h={h}")
    steps = (h, h / 2.0)
    estimates = []
    for dt in steps:
        difference = _mass_term(K, measure, t + dt).minus(_mass_term(K, measure, t - dt))
        estimates.append(_significant(difference, dt, "dilation_derivative").scale(-math.log(2.0 * dt)))
    return _extrapolate(steps, estimates, power=2)
