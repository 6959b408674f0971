"""Small helpers shared across mixmeas: string and file checks, angle arithmetic,
vectorized golden-section search, circular clustering and Richardson extrapolation.
"""

import logging
import math
import os
from collections.abc import Callable, Sequence

import numpy as np

from ..constants import TWO_PI

GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0


def normalize_string(name: str) -> str:
    """Lower-case a kind name and drop spaces, hyphens and underscores.

    Example:
        >>> normalize_string("Expm_1")
        'expm1'
    """
    return name.replace(' ', '').replace('-', '').replace('_', '').lower()


def check_file_exists(file_path, file_description=""):
    """Verify that a required input file exists.

    Args:
        file_path (str or os.PathLike): Path of the file.
        file_description (str, optional): Human-readable description of the file's
            purpose, used in error messages. Defaults to empty string.

    Returns:
        str: The verified path.

    Raises:
        FileNotFoundError: If the file does not exist.

    Notes:
        Logs an error message before raising the exception.
    """
    file_path = os.fspath(file_path)
    if not os.path.isfile(file_path):
        logging.error(f"Expected {file_description} file not found: {file_path}")
        raise FileNotFoundError(f"Expected {file_description} file not found: {file_path}")
    return file_path


def reduce_angle(theta):
    """Reduce angles modulo 2*pi into ``[0, 2*pi)``."""
    reduced = np.mod(theta, TWO_PI)
    # np.mod can round a tiny negative input up to exactly 2*pi
    return np.where(reduced >= TWO_PI, 0.0, reduced)


def unit_frame(theta):
    """Return ``u(theta)`` and ``u'(theta)`` as arrays of shape ``(..., 2)``."""
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([c, s], axis=-1), np.stack([-s, c], axis=-1)


def angle_grid(n_nodes: int, offset: float = 0.0) -> np.ndarray:
    """Equispaced angles ``offset + 2*pi*j/n`` for ``j = 0..n-1``."""
    return offset + TWO_PI * np.arange(n_nodes) / n_nodes


def golden_section_search(func: Callable[[np.ndarray], np.ndarray], lo, hi, width: float,
                          maximize: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized golden-section search on independent brackets.

    Args:
        func: Vectorized objective evaluated elementwise on an array of abscissae.
        lo, hi: Arrays of bracket endpoints (same shape).
        width (float): Stop when every bracket is narrower than this.
        maximize (bool): Search for maxima instead of minima.

    Returns:
        tuple: Abscissae of the best point found in each bracket and the objective there.
    """
    sign = -1.0 if maximize else 1.0
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    x1 = b - GOLDEN_FRACTION * (b - a)
    x2 = a + GOLDEN_FRACTION * (b - a)
    f1 = sign * func(x1)
    f2 = sign * func(x2)
    n_iter = int(math.ceil(math.log(width / max(float(np.max(b - a)), width)) / math.log(GOLDEN_FRACTION)))
    for _ in range(max(n_iter, 0)):
        left = f1 <= f2
        # keep [a, x2] where the left probe wins, [x1, b] otherwise
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        new_x1 = np.where(left, b - GOLDEN_FRACTION * (b - a), x2)
        new_x2 = np.where(left, x1, a + GOLDEN_FRACTION * (b - a))
        probe = np.where(left, new_x1, new_x2)
        f_probe = sign * func(probe)
        f1, f2 = np.where(left, f_probe, f2), np.where(left, f1, f_probe)
        x1, x2 = new_x1, new_x2
    best = np.where(f1 <= f2, x1, x2)
    return best, sign * np.minimum(f1, f2)


def cluster_circular(angles, gap: float) -> list[np.ndarray]:
    """Group sorted angles on the circle into runs separated by more than ``gap``.

    The run crossing ``0 = 2*pi`` is merged with the first one.
    """
    angles = np.sort(reduce_angle(np.asarray(angles, dtype=float)))
    if angles.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(angles) > gap) + 1
    clusters = np.split(angles, breaks)
    if len(clusters) > 1 and (angles[0] + TWO_PI - angles[-1]) <= gap:
        clusters[0] = np.concatenate([clusters[-1] - TWO_PI, clusters[0]])
        clusters.pop()
    return clusters


def richardson_extrapolate(steps: Sequence[float], values: Sequence[float], power: int = 1,
                           levels: int | None = None) -> float:
    """Neville-Richardson extrapolation of estimates with error ``sum_k c_k h^(k*power)``.

    Level ``m`` combines ``T(i)`` and ``T(i+1)`` as ``(T(i+1) - q T(i)) / (1 - q)``
    with ``q = (h[i+m] / h[i])^power``, removing the error orders ``power``,
    ``2*power``, ... in turn.

    Args:
        steps: Strictly decreasing step sizes.
        values: Estimates at those steps.
        power (int): 1 for one-sided stencils, 2 for central ones.
        levels (int, optional): Number of passes, at most ``len(steps) - 1`` (the default).

    Returns:
        float: The most extrapolated estimate.
    """
    table = [float(v) for v in values]
    h = [float(s) for s in steps]
    levels = len(table) - 1 if levels is None else min(levels, len(table) - 1)
    for level in range(1, levels + 1):
        table = [
            (table[i + 1] - (h[i + level] / h[i]) ** power * table[i])
            / (1.0 - (h[i + level] / h[i]) ** power)
            for i in range(len(table) - 1)
        ]
    return table[-1]
