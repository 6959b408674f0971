"""Signed log-domain numbers.

Mixed measures at large dilation are of size ``e^{-phi(r t)}`` and leave the
double-precision range long before the rate ratios settle, so every quantity
that can underflow travels as a ``(sign, ln|value|)`` pair.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp


class LogValue(NamedTuple):
    """Signed scalar stored as ``sign * exp(log_abs)``.

    Attributes
    ----------
    sign : int
        One of -1, 0, +1.
    log_abs : float
        Natural logarithm of the magnitude, ``-inf`` when ``sign == 0``.
    """

    sign: int
    log_abs: float

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(0, -math.inf)

    @classmethod
    def from_float(cls, value: float) -> "LogValue":
        """Convert an ordinary real number."""
        if value == 0.0:
            return cls.zero()
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    def to_float(self) -> float:
        """Return the ordinary real value (0.0 on underflow, inf on overflow)."""
        if self.sign == 0:
            return 0.0
        if self.log_abs > 709.78:
            return self.sign * math.inf
        return self.sign * math.exp(self.log_abs)

    def scale(self, log_factor: float) -> "LogValue":
        """Multiply by ``exp(log_factor)``."""
        if self.sign == 0:
            return self
        return LogValue(self.sign, self.log_abs + log_factor)

    def times(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def negate(self) -> "LogValue":
        return LogValue(-self.sign, self.log_abs)

    def plus(self, other: "LogValue") -> "LogValue":
        return signed_logsumexp([self.sign, other.sign], [self.log_abs, other.log_abs])

    def minus(self, other: "LogValue") -> "LogValue":
        return self.plus(other.negate())


class LogSamples(NamedTuple):
    """Array counterpart of :class:`LogValue` holding integrand samples.

    ``log_scale`` tracks the log magnitude of the largest term that entered a
    sample through :meth:`add`, so quadratures judge convergence against the
    size of the terms rather than the size of what survived cancellation.
    ``None`` means the sample is its own scale.
    """

    sign: np.ndarray
    log_abs: np.ndarray
    log_scale: np.ndarray | None = None

    @classmethod
    def from_array(cls, values) -> "LogSamples":
        values = np.asarray(values, dtype=float)
        with np.errstate(divide='ignore'):
            return cls(np.sign(values), np.log(np.abs(values)))

    @classmethod
    def positive(cls, log_abs) -> "LogSamples":
        """Samples known to be positive, given by their logarithms."""
        log_abs = np.asarray(log_abs, dtype=float)
        sign = np.where(np.isneginf(log_abs), 0.0, 1.0)
        return cls(sign, log_abs)

    @property
    def scale_or_abs(self) -> np.ndarray:
        return self.log_abs if self.log_scale is None else self.log_scale

    def to_array(self) -> np.ndarray:
        with np.errstate(over='ignore'):
            return np.where(self.sign == 0, 0.0, self.sign * np.exp(self.log_abs))

    def shift(self, log_factor) -> "LogSamples":
        """Multiply every sample by ``exp(log_factor)`` (scalar or array)."""
        scale = None if self.log_scale is None else self.log_scale + log_factor
        return LogSamples(self.sign, self.log_abs + log_factor, scale)

    def times(self, other: "LogSamples") -> "LogSamples":
        scale = None
        if self.log_scale is not None or other.log_scale is not None:
            scale = self.scale_or_abs + other.scale_or_abs
        return LogSamples(self.sign * other.sign, self.log_abs + other.log_abs, scale)

    def negate(self) -> "LogSamples":
        return LogSamples(-self.sign, self.log_abs, self.log_scale)

    def add(self, other: "LogSamples") -> "LogSamples":
        """Elementwise signed sum, exact to rounding for opposite-sign ties."""
        top = np.maximum(self.log_abs, other.log_abs)
        finite = np.isfinite(top)
        ref = np.where(finite, top, 0.0)
        with np.errstate(invalid='ignore'):
            mantissa = (self.sign * np.exp(self.log_abs - ref)
                        + other.sign * np.exp(other.log_abs - ref))
        mantissa = np.where(finite, mantissa, 0.0)
        with np.errstate(divide='ignore'):
            log_abs = ref + np.log(np.abs(mantissa))
        scale = np.logaddexp(self.scale_or_abs, other.scale_or_abs)
        return LogSamples(np.sign(mantissa), np.where(mantissa == 0.0, -np.inf, log_abs), scale)

    def total(self, log_weight: float = 0.0) -> LogValue:
        """Signed sum of all samples times ``exp(log_weight)``."""
        return signed_logsumexp(self.sign, self.log_abs).scale(log_weight)

    def magnitude_total(self, log_weight: float = 0.0) -> LogValue:
        """Sum of the sample scales (``|samples|`` unless cancellation occurred) times ``exp(log_weight)``."""
        scale = np.asarray(self.scale_or_abs, dtype=float)
        return signed_logsumexp(np.where(np.isfinite(scale), 1.0, 0.0), scale).scale(log_weight)


def signed_logsumexp(signs, log_abs) -> LogValue:
    """Return ``sum(signs * exp(log_abs))`` as a :class:`LogValue`.

    The terms are shifted by their largest log magnitude before summation
    (``scipy.special.logsumexp`` with ``b=signs``), so magnitudes far below
    the double-precision floor are combined without loss.
    """
    signs = np.asarray(signs, dtype=float).ravel()
    log_abs = np.asarray(log_abs, dtype=float).ravel()
    mask = (signs != 0.0) & np.isfinite(log_abs)
    if not mask.any():
        return LogValue.zero()
    with np.errstate(divide='ignore'):
        value, sign = logsumexp(log_abs[mask], b=signs[mask], return_sign=True)
    if sign == 0 or not np.isfinite(value):
        return LogValue.zero()
    return LogValue(int(sign), float(value))


def relative_difference(a: LogValue, b: LogValue, reference: LogValue) -> float:
    """Return ``|a - b| / |reference|`` computed in the log domain."""
    gap = a.minus(b)
    if gap.sign == 0:
        return 0.0
    if reference.sign == 0:
        return math.inf
    return math.exp(min(gap.log_abs - reference.log_abs, 700.0))
