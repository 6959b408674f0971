import math

import numpy as np
import pytest
from scipy import special

from mixmeas.common.errors import NumericalFailureError
from mixmeas.common.log_value import LogSamples
from mixmeas.quadrature import circle_minimize, line_integrate, panel_integrate, periodic_integrate


def test_periodic_integrate_smooth_function():
    # integral of exp(cos theta) over the circle is 2 pi I0(1)
    result = periodic_integrate(lambda theta: LogSamples.positive(np.cos(theta)), tolerance=1e-12)
    expected = 2.0 * math.pi * 1.2660658777520082
    assert abs(result.value.to_float() - expected) <= 1e-10 * expected
    assert result.nodes_used >= 128


def test_periodic_integrate_in_log_domain():
    result = periodic_integrate(lambda theta: LogSamples.positive(-1000.0 + np.cos(theta)))
    expected_log = -1000.0 + math.log(2.0 * math.pi * 1.2660658777520082)
    assert abs(result.value.log_abs - expected_log) <= 1e-9


def test_periodic_integrate_cancelling_integrand():
    result = periodic_integrate(lambda theta: LogSamples.from_array(np.cos(theta)))
    assert abs(result.value.to_float()) <= 1e-12


def test_periodic_integrate_reports_non_convergence():
    with pytest.raises(NumericalFailureError) as err:
        periodic_integrate(lambda theta: LogSamples.from_array(np.abs(np.sin(theta))), tolerance=1e-14,
                           max_nodes=256)
    assert err.value.last_estimate is not None


def test_panel_integrate_kinked_function():
    # |sin| has kinks at 0 and pi; its integral is 4
    result = panel_integrate(lambda theta: LogSamples.from_array(np.abs(np.sin(theta))), [0.0, math.pi])
    assert abs(result.value.to_float() - 4.0) <= 1e-9


def test_line_integrate_infinite_upper_limit():
    result = line_integrate(lambda s: s * math.exp(-0.5 * s * s), 0.0, math.inf)
    assert abs(result.value.to_float() - 1.0) <= 1e-10


def test_line_integrate_rejects_empty_interval():
    with pytest.raises(ValueError):
        line_integrate(math.exp, 1.0, 1.0)


def test_circle_minimize_two_minimizers():
    result = circle_minimize(lambda theta: 4.0 * np.cos(theta) ** 2 + np.sin(theta) ** 2)
    assert abs(result.min_value - 1.0) <= 1e-12
    assert len(result.argmin_set) == 2
    assert abs(result.argmin_set[0] - 0.5 * math.pi) <= 1e-6
    assert abs(result.argmin_set[1] - 1.5 * math.pi) <= 1e-6


def test_periodic_integrate_gaussian_peak():
    # integral of exp(-100 (1 - cos theta)) is 2 pi e^{-100} I0(100)
    def peak(theta):
        return LogSamples.positive(-100.0 * (1.0 - np.cos(theta)))

    result = periodic_integrate(peak, tolerance=1e-12)
    expected = 2.0 * math.pi * special.ive(0, 100.0)
    assert abs(result.value.to_float() - expected) <= 1e-10 * expected
    coarse = periodic_integrate(peak, tolerance=1e-3)
    assert coarse.nodes_used < result.nodes_used


def test_periodic_integrate_scaling_by_1e_minus_250():
    def f(theta):
        return LogSamples.from_array(np.cos(theta) + 0.3 * np.sin(2.0 * theta) + 0.5)

    def scaled(theta):
        return f(theta).shift(math.log(1e-250))

    plain = periodic_integrate(f)
    tiny = periodic_integrate(scaled)
    assert tiny.value.sign == plain.value.sign == 1
    assert abs(tiny.value.log_abs - plain.value.log_abs - math.log(1e-250)) <= 1e-12
    assert tiny.nodes_used == plain.nodes_used
