"""Result containers returned by mixmeas operations and written by the CLI."""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import pandas as pd

from .common.log_value import LogValue
from .constants import CORRECTED_RATIO_COLUMN, SWEEP_CSV_COLUMNS
from .quadrature import QuadResult


@dataclass(frozen=True)
class MixedValue:
    """A mixed measure at one dilation.

    Attributes
    ----------
    value : LogValue
        The measure, in the log domain.
    t : float
        Dilation parameter.
    quad : QuadResult
        Angular quadrature that produced the value (node count, error estimate).
    outside_hypotheses : bool
        Set when second-order bodies ``B`` or ``C`` are only piecewise smooth.
    """

    value: LogValue
    t: float
    quad: QuadResult = field(compare=False)
    outside_hypotheses: bool = False

    @property
    def sign(self) -> int:
        return self.value.sign

    @property
    def log_abs(self) -> float:
        return self.value.log_abs

    @property
    def nodes_used(self) -> int:
        return self.quad.nodes_used

    def to_float(self) -> float:
        """Ordinary real value; underflows to 0.0 for large dilations."""
        return self.value.to_float()


class MinEnergyResult(NamedTuple):
    """Minimum of ``h^2 + h'^2`` (squared norm of boundary points) and its minimizing normals."""

    min_value: float
    argmin_angles: list[float]


@dataclass
class RateSweep:
    """Sweep of a mixed measure over a dilation grid with its rate ratios.

    Attributes
    ----------
    kind : str
        ``first``, ``second`` or ``gauss``.
    t_grid : np.ndarray
        Dilations.
    log_values : list[LogValue]
        Measured values.
    ratios : np.ndarray
        ``ln|value| / phi(r t)``; NaN where ``phi(r t) = 0``.
    defined : np.ndarray
        Mask of grid points where the ratio is defined.
    phi_rt : np.ndarray
        ``phi(r t)`` on the grid.
    rate_r : float
        Inradius driving the rate.
    nodes : np.ndarray
        Quadrature node counts.
    ratio_corrected : np.ndarray, optional
        Second-order sweeps only: ``ln|value| / (phi(r t) - ln phi'(r t))``.
    trend_improves : bool
        Whether ``|ratio + 1|`` is smaller at the last grid point than at the first.
    converged : bool
        Whether the last defined ratio lies within the rate band of ``-1`` for the profile kind
        (0.15 for linear profiles, 0.1 otherwise).
    """

    kind: str
    t_grid: np.ndarray
    log_values: list[LogValue]
    ratios: np.ndarray
    defined: np.ndarray
    phi_rt: np.ndarray
    rate_r: float
    nodes: np.ndarray
    ratio_corrected: np.ndarray | None = None
    trend_improves: bool = True
    converged: bool = False

    @property
    def signs(self) -> np.ndarray:
        return np.array([v.sign for v in self.log_values], dtype=int)

    @property
    def log_abs(self) -> np.ndarray:
        return np.array([v.log_abs for v in self.log_values], dtype=float)

    def to_dataframe(self) -> pd.DataFrame:
        """One row per grid point, columns as in the sweep CSV output."""
        data = {
            'sign': self.signs,
            'log_abs': self.log_abs,
            'ratio': self.ratios,
            'phi_rt': self.phi_rt,
            'nodes': self.nodes.astype(int),
        }
        df = pd.DataFrame({'t': self.t_grid, **data})[SWEEP_CSV_COLUMNS]
        if self.ratio_corrected is not None:
            df[CORRECTED_RATIO_COLUMN] = self.ratio_corrected
        return df


@dataclass
class ComparisonReport:
    """Outcome of comparing ``mu(t R L; M)`` with ``mu(t K; M)`` on a grid.

    Attributes
    ----------
    R : float
        Dilation of ``L`` being tested.
    inradius_r : float
        L-inradius of ``K``.
    inclusion : bool
        Whether ``R L`` lies inside ``K`` (support test on 4096 angles).
    holds_on_grid : bool
        Whether ``mu(t R L) >= mu(t K)`` at every grid point.
    first_violation_t : float or None
        Smallest grid dilation where the inequality fails.
    max_t_tested : float
        Largest grid dilation.
    verdict : str
        ``HOLDS``, ``VIOLATED``, ``INCONCLUSIVE`` or ``HYPOTHESIS_FAILS``.
    """

    R: float
    inradius_r: float
    inclusion: bool
    holds_on_grid: bool
    first_violation_t: float | None
    max_t_tested: float
    verdict: str
    t_grid: np.ndarray = field(default_factory=lambda: np.empty(0))
    log_lhs: np.ndarray = field(default_factory=lambda: np.empty(0))
    log_rhs: np.ndarray = field(default_factory=lambda: np.empty(0))

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame({
            't': self.t_grid,
            'log_mu_RL': self.log_lhs,
            'log_mu_K': self.log_rhs,
            'holds': self.log_lhs >= self.log_rhs,
        })

    def to_dict(self) -> dict:
        """JSON-ready summary (NaN and None become null)."""
        def clean(x):
            if x is None:
                return None
            x = float(x)
            return None if math.isnan(x) else x

        return {
            'R': clean(self.R),
            'inradius_r': clean(self.inradius_r),
            'inclusion': bool(self.inclusion),
            'holds_on_grid': bool(self.holds_on_grid),
            'first_violation_t': clean(self.first_violation_t),
            'max_t_tested': clean(self.max_t_tested),
            'verdict': self.verdict,
            'grid': [
                {'t': clean(t), 'log_mu_RL': clean(a), 'log_mu_K': clean(b)}
                for t, a, b in zip(self.t_grid, self.log_lhs, self.log_rhs)
            ],
        }
