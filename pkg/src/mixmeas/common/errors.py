"""Exception hierarchy for mixmeas.

Input problems derive from ``ValueError``, numerical breakdowns from
``RuntimeError`` and failed cross-checks from ``AssertionError``; the CLI maps
the three families to exit codes 2, 3 and 4.
"""

import math


class ConfigError(ValueError):
    """Syntax or semantic problem in a configuration document."""


class BodyValidationError(ValueError):
    """A body failed the origin-interior, convexity or parameter checks."""


class PolygonOrientationError(BodyValidationError):
    """Polygon vertices are not listed counterclockwise."""


class DegenerateBodyError(BodyValidationError):
    """Minkowski combination without any strictly positive coefficient."""


class PhiValidationError(ValueError):
    """Density profile is not convex, nondecreasing and non-constant."""


class DomainError(ValueError):
    """Profile evaluated outside ``[0, inf)``."""


class SmoothnessError(ValueError):
    """Second-order data requested from a body that is not C2plus."""


class PreconditionError(ValueError):
    """Operation called outside its documented precondition."""


class NumericalFailureError(RuntimeError):
    """A numerical procedure did not reach its tolerance.

    Parameters
    ----------
    message : str
        Description of the failure.
    last_estimate : object, optional
        Best value available when the procedure gave up.
    """

    def __init__(self, message: str, last_estimate=None):
        super().__init__(message)
        self.last_estimate = last_estimate


class AmbiguousMaximizerError(NumericalFailureError):
    """The direction maximizing ``<x,u>/h(u)`` is not unique."""


class SignificanceLossError(NumericalFailureError):
    """A finite difference of masses fell below the representable floor."""


class ThresholdError(NumericalFailureError):
    """A second-order value is not negative where a sweep needs ``ln(-value)``."""

    def __init__(self, t: float, last_estimate=None):
        super().__init__(
            f"Second-order mixed measure is not negative at t={t!r}; "
            "the sweep grid must start past the sign-change threshold",
            last_estimate,
        )
        self.t = t


class TailRangeError(NumericalFailureError):
    """The complement mass underflowed the tail floor."""

    def __init__(self, t: float, max_usable_t: float):
        usable = "none" if math.isnan(max_usable_t) else f"{max_usable_t!r}"
        super().__init__(f"Tail mass underflows at t={t!r}; largest usable t on the grid: {usable}")
        self.t = t
        self.max_usable_t = max_usable_t


class InvariantViolationError(AssertionError):
    """A sign invariant of a rate sweep was broken."""


class VerificationError(AssertionError):
    """A verification or comparison assertion failed."""
