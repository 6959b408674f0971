"""The ``verify`` suite: every closed-form path against its oracle or exact value.

Checks are deterministic and each is recorded through
:class:`~mixmeas.utils_performance_measure.SuiteProfiler`; the suite raises
:class:`~mixmeas.common.errors.VerificationError` after the summary table when
any of them failed.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .asymptotics import comparison_check, min_energy
from .common.errors import VerificationError
from .common.utilities import angle_grid, unit_frame
from .constants import TWO_PI, VERDICT_HOLDS, VERDICT_VIOLATED
from .io_manager import RunConfig
from .mixed import gaussian_second, mixed_first, mixed_second, second_sign_threshold, steiner_check
from .models.bodies2d import (
    Disk,
    Ellipse,
    FourierBody,
    PolygonBody,
    SmoothnessClass,
    gauge,
    gauge_gradient,
    inradius,
)
from .models.densities import MeasureSpec, normalization_constant
from .oracles import fd_first, fd_second, gauge_gradient_fd, inradius_bruteforce
from .utils_performance_measure import SuiteProfiler

SQUARE = PolygonBody(((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)))
DIAMOND = PolygonBody(((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)))


@dataclass(frozen=True)
class CheckOutcome:
    """Result of one check: whether it passed and the worst deviation seen."""

    passed: bool
    deviation: float
    tolerance: float
    detail: str = ""


def _outcome(deviation: float, tolerance: float, label: str) -> CheckOutcome:
    passed = bool(deviation <= tolerance)
    detail = f"{label}: deviation {deviation:.3e} (tolerance {tolerance:.1e})"
    if not passed:
        logging.error(detail)
    return CheckOutcome(passed, float(deviation), tolerance, detail)


def _relative(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def check_ball_remark() -> CheckOutcome:
    """Disks under the standard profile: ``2 pi e^{-t^2/2} (1 - t^2)`` and its zero at ``t = 1``."""
    disk = Disk(1.0)
    measure = MeasureSpec.gaussian(normalized=False)
    worst = 0.0
    for t in (0.5, 2.0, 4.0, 8.0):
        value = mixed_second(disk, disk, disk, measure, t)
        exact_log = math.log(TWO_PI) - 0.5 * t * t + math.log(abs(1.0 - t * t))
        worst = max(worst, abs(math.expm1(value.log_abs - exact_log)))
    worst = max(worst, abs(mixed_second(disk, disk, disk, measure, 1.0).to_float()))
    worst = max(worst, abs(second_sign_threshold(disk, disk, disk, measure, 0.5, 2.0) - 1.0))
    return _outcome(worst, 1e-8, "ball remark")


def check_gaussian_reduction() -> CheckOutcome:
    A = Ellipse(2.0, 1.0)
    measure = MeasureSpec.gaussian()
    worst = 0.0
    for B in (Disk(1.0), Ellipse(1.5, 0.7)):
        for t in (1.0, 2.0, 3.0):
            direct = gaussian_second(A, B, B, t).to_float()
            general = mixed_second(A, B, B, measure, t).to_float()
            worst = max(worst, _relative(general, direct))
    return _outcome(worst, 1e-10, "gaussian reduction")


def first_order_matrix():
    gaussian = MeasureSpec.gaussian()
    return [
        (Disk(1.0), Disk(1.0), gaussian),
        (Ellipse(2.0, 1.0), Disk(1.0), gaussian),
        (Ellipse(2.0, 1.0), Ellipse(1.5, 0.7), gaussian),
        (SQUARE, Disk(1.0), gaussian),
        (Ellipse(2.0, 1.0), Disk(1.0), MeasureSpec(gaussian.phi, SQUARE)),
    ]


def second_order_matrix():
    gaussian = MeasureSpec.gaussian()
    return [
        (Disk(1.0), Disk(1.0), Disk(1.0), gaussian),
        (Ellipse(2.0, 1.0), Disk(1.0), Disk(1.0), gaussian),
        (Ellipse(2.0, 1.0), Ellipse(1.5, 0.7), Disk(1.0), gaussian),
    ]


def check_oracle_first() -> CheckOutcome:
    worst = 0.0
    for K, M, measure in first_order_matrix():
        for t in (1.0, 2.0, 4.0):
            closed = mixed_first(K, M, measure, t).value
            oracle = fd_first(K, M, measure, t)
            worst = max(worst, abs(math.expm1(oracle.log_abs - closed.log_abs)))
    return _outcome(worst, 1e-4, "fd_first vs mixed_first")


def check_oracle_second() -> CheckOutcome:
    worst = 0.0
    for A, B, C, measure in second_order_matrix():
        for t in (1.5, 2.0, 3.0):
            closed = mixed_second(A, B, C, measure, t).to_float()
            oracle = fd_second(A, B, C, measure, t).to_float()
            worst = max(worst, _relative(oracle, closed))
    return _outcome(worst, 1e-3, "fd_second vs mixed_second")


def check_inradius() -> CheckOutcome:
    cases = [
        (Ellipse(2.0, 1.0), Disk(1.0), 1.0),
        (SQUARE, DIAMOND, 1.0),
        (Disk(3.0), Ellipse(2.0, 1.0), 1.5),
    ]
    worst = 0.0
    for K, L, expected in cases:
        r = inradius(K, L).r
        worst = max(worst, abs(r - expected), abs(inradius_bruteforce(K, L) - r))
    return _outcome(worst, 1e-7, "inradius vs brute force")


def check_gauge_identities() -> CheckOutcome:
    """Euler identity, duality with the support function and 0-homogeneity of the gradient.

    The 4096-angle support maximum may undershoot the gauge by the grid
    resolution but never exceed it.
    """
    theta = angle_grid(16, 0.1)
    u, _ = unit_frame(theta)
    points = 1.7 * u
    u_grid, _ = unit_frame(angle_grid(4096))
    worst, undershoot, overshoot = 0.0, 0.0, 0.0
    for L in (Ellipse(2.0, 1.0), Ellipse(1.5, 0.7), FourierBody(1.0, (0.0, 0.1), (0.05,))):
        h = L.support(angle_grid(4096))[0]
        for x in points:
            value = gauge(L, x)
            dual = float(np.max(u_grid @ x / h))
            undershoot = max(undershoot, (value - dual) / value)
            overshoot = max(overshoot, (dual - value) / value)
            grad = gauge_gradient(L, x)
            worst = max(
                worst,
                float(np.max(np.abs(grad - gauge_gradient_fd(L, x)))),
                float(np.max(np.abs(gauge_gradient(L, 5.0 * x) - grad))),
            )
    outcome = _outcome(worst, 1e-7, "gauge identities")
    if undershoot > 1e-5 or overshoot > 1e-12:
        detail = f"gauge/support duality: undershoot {undershoot:.3e}, overshoot {overshoot:.3e}"
        logging.error(detail)
        return CheckOutcome(False, max(undershoot, overshoot), 1e-5, detail)
    return outcome


def check_normalization() -> CheckOutcome:
    z = normalization_constant(MeasureSpec.gaussian(normalized=False))
    return _outcome(_relative(z, TWO_PI), 1e-8, "normalization constant")


def check_steiner() -> CheckOutcome:
    worst = max(steiner_check(Disk(1.0), Disk(1.0), [0.0, 1.0]), steiner_check(SQUARE, Disk(1.0), [0.0, 0.5]))
    return _outcome(worst, 1e-7, "Steiner polynomial")


def check_min_energy() -> CheckOutcome:
    A = Ellipse(2.0, 1.0)
    energy = min_energy(A).min_value
    return _outcome(max(abs(energy - 1.0), abs(energy - inradius(A, Disk(1.0)).r ** 2)), 1e-8, "min energy")


def check_comparison() -> CheckOutcome:
    K = PolygonBody(((-2.0, -2.0), (2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)))
    disk = Disk(1.0)
    measure = MeasureSpec.gaussian(normalized=False)
    grid = np.linspace(5.0, 15.0, 6)
    holds = comparison_check(K, disk, 1.0, disk, measure, grid)
    violated = comparison_check(K, disk, 3.0, disk, measure, grid)
    passed = (
        holds.verdict == VERDICT_HOLDS
        and holds.inclusion
        and violated.verdict == VERDICT_VIOLATED
        and violated.first_violation_t is not None
        and violated.first_violation_t <= 6.0
    )
    detail = f"comparison verdicts: R=1 {holds.verdict}, R=3 {violated.verdict}"
    return CheckOutcome(passed, 0.0 if passed else 1.0, 0.0, detail)


def check_configured_pair(config: RunConfig) -> CheckOutcome:
    """The configured ``K``, ``M`` and measure at the configured ``t``: closed form against the oracle."""
    K, M = config.body("K"), config.body("M")
    t = config.run.t
    closed = mixed_first(K, M, config.measure, t).value
    oracle = fd_first(K, M, config.measure, t)
    return _outcome(abs(math.expm1(oracle.log_abs - closed.log_abs)), 1e-4, "configured fd_first")


BUILTIN_CHECKS: list[tuple[str, Callable[[], CheckOutcome]]] = [
    ("ball remark", check_ball_remark),
    ("gaussian reduction", check_gaussian_reduction),
    ("first-order oracle", check_oracle_first),
    ("second-order oracle", check_oracle_second),
    ("inradius", check_inradius),
    ("gauge identities", check_gauge_identities),
    ("normalization", check_normalization),
    ("steiner", check_steiner),
    ("min energy", check_min_energy),
    ("comparison", check_comparison),
]


def run_verification_suite(config: RunConfig | None = None, profiler: SuiteProfiler | None = None) -> SuiteProfiler:
    """Run the built-in checks (and the configured pair when roles ``K`` and ``M`` are bound).

    Returns:
        SuiteProfiler: Timing and outcome of every check.

    Raises:
        VerificationError: If any check failed; raised after the summary table is logged.
    """
    profiler = profiler or SuiteProfiler()
    logging.info("Running the verification suite...")
    profiler.start()
    try:
        for name, check in BUILTIN_CHECKS:
            profiler.measure_step(name, check)
        if config is not None and {"K", "M"} <= set(config.roles):
            K = config.body("K")
            if isinstance(K, PolygonBody) or K.smoothness is SmoothnessClass.C2PLUS:
                profiler.measure_step("configured pair", check_configured_pair, config)
    finally:
        profiler.stop()
        profiler.log_summary_table()
    failed = profiler.failed_steps
    if failed:
        raise VerificationError("verification failed: " + "; ".join(step.detail for step in failed))
    logging.info("Verification suite passed.")
    return profiler
