import math

import pytest
from scipy import integrate
from constants_test import (
    BALL_FIRST_T1,
    BALL_GAUSS_SECOND_T2,
    BALL_SECOND_T2,
    BALL_SURFACE_T2,
    SQUARE_FIRST_T1,
)
from utils_tests import ball_first, ball_second_log_abs, rel_err

from mixmeas.common.errors import PreconditionError, SmoothnessError
from mixmeas.mixed import (
    gaussian_second,
    lebesgue_mixed_area,
    lebesgue_second_check,
    mixed_first,
    mixed_second,
    perimeter,
    second_sign_threshold,
    steiner_check,
    surface_content,
)
from mixmeas.models.bodies2d import Disk, Ellipse, PolygonBody, minkowski_combine
from mixmeas.models.densities import Expm1Phi, MeasureSpec, PowerPhi, normalize
from mixmeas.oracles import fd_first

DISK = Disk(1.0)
SQUARE = PolygonBody(((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)))
DIAMOND = PolygonBody(((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)))
GAUSSIAN_C0_ONE = MeasureSpec.gaussian(normalized=False)


def test_mixed_first_of_disks():
    result = mixed_first(DISK, DISK, GAUSSIAN_C0_ONE, 1.0)
    assert result.sign == 1
    assert rel_err(result.to_float(), BALL_FIRST_T1) <= 1e-8
    assert abs(result.to_float() - 3.81094) <= 1e-5
    assert result.nodes_used > 0
    assert not result.outside_hypotheses


def test_mixed_first_of_square_edges():
    result = mixed_first(SQUARE, DISK, MeasureSpec.gaussian(), 1.0)
    # four edges of 1-D Gaussian integrals: (4/sqrt(2 pi)) e^{-1/2} (2 Phi(1) - 1)
    exact = 4.0 / math.sqrt(2.0 * math.pi) * math.exp(-0.5) * math.erf(1.0 / math.sqrt(2.0))
    assert rel_err(result.to_float(), exact) <= 1e-8
    assert abs(result.to_float() - SQUARE_FIRST_T1) <= 1e-5


def test_mixed_first_of_polygon_under_lebesgue_is_mixed_area():
    # mu(tK; M) = 2 t V(K, M) for the area measure
    result = mixed_first(SQUARE, DISK, MeasureSpec.lebesgue(), 1.5)
    assert rel_err(result.to_float(), 2.0 * 1.5 * lebesgue_mixed_area(SQUARE, DISK)) <= 1e-10


def test_surface_content():
    result = surface_content(DISK, GAUSSIAN_C0_ONE, 2.0)
    assert rel_err(result.to_float(), BALL_SURFACE_T2) <= 1e-8
    assert abs(result.to_float() - 1.70067) <= 1e-5


def test_mixed_first_far_below_double_range():
    t = 40.0
    result = mixed_first(DISK, DISK, GAUSSIAN_C0_ONE, t)
    assert result.to_float() == 0.0
    expected = math.log(ball_first(1.0) / math.exp(-0.5)) + math.log(t) - 0.5 * t * t
    assert abs(result.log_abs - expected) <= 1e-8


def test_mixed_first_preconditions():
    with pytest.raises(PreconditionError):
        mixed_first(DISK, DISK, GAUSSIAN_C0_ONE, 0.0)
    with pytest.raises(PreconditionError):
        mixed_first(DISK, DISK, GAUSSIAN_C0_ONE, math.inf)
    rounded = minkowski_combine([(1.0, SQUARE), (1.0, DISK)])
    with pytest.raises(SmoothnessError):
        mixed_first(rounded, DISK, GAUSSIAN_C0_ONE, 1.0)


def test_mixed_second_of_disks():
    result = mixed_second(DISK, DISK, DISK, GAUSSIAN_C0_ONE, 2.0)
    assert result.sign == -1
    assert rel_err(result.to_float(), BALL_SECOND_T2) <= 1e-8
    assert abs(result.to_float() + 2.55101) <= 1e-5
    for t in (0.5, 4.0, 12.0):
        value = mixed_second(DISK, DISK, DISK, GAUSSIAN_C0_ONE, t)
        assert abs(value.log_abs - ball_second_log_abs(t)) <= 1e-8


def test_mixed_second_vanishes_at_the_threshold():
    result = mixed_second(DISK, DISK, DISK, GAUSSIAN_C0_ONE, 1.0)
    assert abs(result.to_float()) <= 1e-8
    assert abs(second_sign_threshold(DISK, DISK, DISK, GAUSSIAN_C0_ONE, 0.5, 2.0) - 1.0) <= 1e-8
    with pytest.raises(PreconditionError):
        second_sign_threshold(DISK, DISK, DISK, GAUSSIAN_C0_ONE, 2.0, 4.0)


def test_gaussian_second_of_disks():
    result = gaussian_second(DISK, DISK, DISK, 2.0)
    assert rel_err(result.to_float(), BALL_GAUSS_SECOND_T2) <= 1e-8
    assert abs(result.to_float() + 0.40601) <= 1e-5


def test_gaussian_second_matches_general_formula():
    A = Ellipse(2.0, 1.0)
    B = Ellipse(1.5, 0.7)
    measure = MeasureSpec.gaussian()
    for t in (1.0, 2.5):
        direct = gaussian_second(A, B, DISK, t).to_float()
        general = mixed_second(A, B, DISK, measure, t).to_float()
        assert rel_err(general, direct) <= 1e-10


def test_mixed_second_smoothness_requirements():
    with pytest.raises(SmoothnessError):
        mixed_second(SQUARE, DISK, DISK, GAUSSIAN_C0_ONE, 2.0)
    polygon_gauge = MeasureSpec(GAUSSIAN_C0_ONE.phi, SQUARE)
    with pytest.raises(SmoothnessError):
        mixed_second(DISK, DISK, DISK, polygon_gauge, 2.0)


def test_mixed_second_flags_piecewise_bodies(caplog):
    result = mixed_second(Ellipse(2.0, 1.0), SQUARE, DISK, MeasureSpec.gaussian(), 2.0)
    assert result.outside_hypotheses
    assert "piecewise" in caplog.text


def test_lebesgue_identities():
    assert abs(lebesgue_mixed_area(SQUARE, DISK) - 4.0) <= 1e-14
    assert abs(perimeter(SQUARE) - 8.0) <= 1e-14
    assert abs(perimeter(DISK) - 2.0 * math.pi) <= 1e-12
    assert abs(lebesgue_mixed_area(DISK, DISK) - math.pi) <= 1e-12
    assert lebesgue_second_check(DISK, DISK, DISK) <= 1e-10
    assert lebesgue_second_check(Ellipse(2.0, 1.0), SQUARE, DISK) <= 1e-8


def test_steiner_polynomial():
    assert steiner_check(DISK, DISK, [0.0, 0.5, 1.0]) <= 1e-7
    assert steiner_check(SQUARE, DISK, [0.0, 0.5]) <= 1e-7
    with pytest.raises(PreconditionError):
        steiner_check(DISK, DISK, [-1.0])


def test_mixed_first_under_square_gauge():
    # x_K(theta) = u(theta) and ||u||_square = max(|cos|, |sin|): eight copies of one octant
    measure = MeasureSpec(PowerPhi(0.5, 2.0), SQUARE)
    for t in (2.0, 6.0):
        octant = integrate.quad(lambda s: math.exp(-0.5 * t * t * math.cos(s) ** 2), 0.0, 0.25 * math.pi,
                                epsabs=0.0, epsrel=1e-13)[0]
        result = mixed_first(DISK, DISK, measure, t)
        assert rel_err(result.to_float(), 8.0 * t * octant) <= 1e-8


def test_mixed_first_of_ellipse_under_polygon_gauges():
    for gauge_body in (SQUARE, DIAMOND):
        measure = MeasureSpec(PowerPhi(0.5, 2.0), gauge_body)
        closed = mixed_first(Ellipse(2.0, 1.0), DISK, measure, 2.0).to_float()
        assert rel_err(fd_first(Ellipse(2.0, 1.0), DISK, measure, 2.0).to_float(), closed) <= 1e-4


def test_mixed_first_resolves_the_expm1_peak():
    # two Laplace peaks at the short-axis tips: |x|^2 ~ 1 + 12 s^2, f = a^2/b = 4
    measure = normalize(MeasureSpec(Expm1Phi(1.0), DISK))
    for t in (8.0, 10.0, 14.0):
        result = mixed_first(Ellipse(2.0, 1.0), DISK, measure, t)
        curvature = 12.0 * t * math.exp(t)
        laplace = (measure.log_c0 + math.log(2.0 * 4.0 * t) + 0.5 * math.log(2.0 * math.pi / curvature)
                   - math.expm1(t))
        assert result.sign == 1
        assert abs(result.log_abs - laplace) <= 1e-3


def test_mixed_first_is_homogeneous_in_m():
    K = Ellipse(2.0, 1.0)
    measure = MeasureSpec.gaussian()
    base = mixed_first(K, Ellipse(1.5, 0.7), measure, 2.0)
    for scale in (0.5, 3.0):
        scaled = mixed_first(K, Ellipse(1.5 * scale, 0.7 * scale), measure, 2.0)
        assert abs(scaled.log_abs - base.log_abs - math.log(scale)) <= 1e-12


def test_mixed_first_is_additive_in_m():
    K = Ellipse(2.0, 1.0)
    measure = MeasureSpec.gaussian()
    first = mixed_first(K, Ellipse(1.5, 0.7), measure, 2.0).to_float()
    second = mixed_first(K, DISK, measure, 2.0).to_float()
    both = mixed_first(K, minkowski_combine([(1.0, Ellipse(1.5, 0.7)), (1.0, DISK)]), measure, 2.0).to_float()
    assert rel_err(both, first + second) <= 1e-8


def test_mixed_first_is_monotone_in_m():
    K = Ellipse(2.0, 1.0)
    measure = MeasureSpec.gaussian()
    for smaller, larger in ((DISK, Disk(2.0)), (Ellipse(1.5, 0.7), Disk(1.5))):
        assert mixed_first(K, smaller, measure, 3.0).log_abs <= mixed_first(K, larger, measure, 3.0).log_abs


def test_mixed_second_is_symmetric_in_b_and_c():
    A = Ellipse(2.0, 1.0)
    measure = MeasureSpec.gaussian()
    for t in (1.5, 3.0):
        bc = mixed_second(A, Ellipse(1.5, 0.7), DISK, measure, t)
        cb = mixed_second(A, DISK, Ellipse(1.5, 0.7), measure, t)
        assert bc.sign == cb.sign
        assert abs(bc.log_abs - cb.log_abs) <= 1e-12
