import math

import numpy as np
import pytest

from mixmeas.common.errors import ConfigError, DomainError, PhiValidationError, PreconditionError
from mixmeas.models.bodies2d import Disk, Ellipse
from mixmeas.models.densities import (
    Expm1Phi,
    LinearPhi,
    MeasureSpec,
    PowerPhi,
    ZeroPhi,
    growth_condition_report,
    normalization_constant,
    normalize,
    partial_radial_mass,
    phi_eval,
    phi_from_descriptor,
    phi_prime,
)


def test_profile_values():
    assert abs(phi_eval(PowerPhi(0.5, 2.0), 3.0) - 4.5) <= 1e-15
    assert abs(phi_prime(PowerPhi(0.5, 2.0), 3.0) - 3.0) <= 1e-15
    assert abs(phi_eval(LinearPhi(2.0), 1.5) - 3.0) <= 1e-15
    assert abs(phi_eval(Expm1Phi(1.0), 1.0) - (math.e - 1.0)) <= 1e-15
    assert abs(phi_prime(Expm1Phi(1.0), 1.0) - math.e) <= 1e-15
    # p = 1 has the constant right derivative at 0
    assert abs(phi_prime(PowerPhi(3.0, 1.0), 0.0) - 3.0) <= 1e-15


def test_negative_radius_is_a_domain_error():
    with pytest.raises(DomainError):
        phi_eval(PowerPhi(0.5, 2.0), -1.0)
    with pytest.raises(DomainError):
        phi_prime(LinearPhi(1.0), -0.1)
    with pytest.raises(DomainError):
        partial_radial_mass(LinearPhi(1.0), -0.1)


def test_log_prime_matches_prime():
    r = np.array([0.5, 2.0, 10.0])
    for phi in (PowerPhi(0.5, 2.0), PowerPhi(1.0, 3.0), LinearPhi(2.0), Expm1Phi(0.5)):
        assert np.allclose(phi.log_prime(r), np.log(phi.prime(r)), rtol=0, atol=1e-13)


def test_profile_shape_is_validated():
    with pytest.raises(PhiValidationError):
        PowerPhi(0.5, 0.5)
    with pytest.raises(PhiValidationError):
        PowerPhi(-1.0, 2.0)
    with pytest.raises(PhiValidationError):
        LinearPhi(0.0)
    with pytest.raises(PhiValidationError):
        Expm1Phi(math.inf)
    with pytest.raises(PhiValidationError):
        ZeroPhi()
    assert ZeroPhi(allow_debug=True).kind == "zero"


def test_radial_mass_closed_forms():
    gaussian = PowerPhi(0.5, 2.0)
    assert abs(partial_radial_mass(gaussian, 1.0) - (1.0 - math.exp(-0.5))) <= 1e-14
    assert partial_radial_mass(gaussian, 0.0) == 0.0
    assert abs(partial_radial_mass(gaussian, math.inf) - 1.0) <= 1e-14
    linear = LinearPhi(1.0)
    assert abs(partial_radial_mass(linear, 2.0) - (1.0 - 3.0 * math.exp(-2.0))) <= 1e-14
    assert abs(partial_radial_mass(linear, math.inf) - 1.0) <= 1e-15


def test_radial_mass_of_expm1_by_quadrature():
    phi = Expm1Phi(1.0)
    assert abs(partial_radial_mass(phi, 50.0) - phi.psi_infinity) <= 1e-10
    assert abs(float(phi.radial_mass(0.7)) - partial_radial_mass(phi, 0.7)) <= 1e-10


def test_radial_tail_far_below_double_range():
    gaussian = PowerPhi(0.5, 2.0)
    # Psi_tail(x) = exp(-x^2/2) exactly
    for x in (1.0, 10.0, 40.0, 60.0):
        assert abs(float(gaussian.log_radial_tail(x)) + 0.5 * x * x) <= 1e-9 * max(1.0, 0.5 * x * x)
    linear = LinearPhi(1.0)
    # Psi_tail(x) = (1 + x) exp(-x)
    for x in (1.0, 100.0, 800.0):
        assert abs(float(linear.log_radial_tail(x)) - (math.log1p(x) - x)) <= 1e-9 * x


def test_growth_condition_report():
    t = np.array([2.0, 5.0, 10.0])
    report = growth_condition_report(PowerPhi(0.5, 2.0), t)
    assert abs(report.ratios[-1] - math.log(10.0) / 50.0) <= 1e-12
    assert report.decreasing_to_zero
    report = growth_condition_report(Expm1Phi(1.0), np.array([1.0, 5.0]))
    assert abs(report.ratios[-1] - 5.0 / math.expm1(5.0)) <= 1e-12
    with pytest.raises(PreconditionError):
        growth_condition_report(LinearPhi(1.0), [3.0, 2.0])


def test_normalization_constant():
    assert abs(normalization_constant(MeasureSpec.gaussian(normalized=False)) - 2.0 * math.pi) <= 1e-12
    assert abs(normalization_constant(MeasureSpec(LinearPhi(1.0), Disk(1.0))) - 2.0 * math.pi) <= 1e-12
    # the gauge body scales the total mass through its area
    measure = MeasureSpec(PowerPhi(0.5, 2.0), Ellipse(2.0, 1.0))
    assert abs(normalization_constant(measure) - 4.0 * math.pi) <= 1e-12
    with pytest.raises(PreconditionError):
        normalization_constant(MeasureSpec.lebesgue())


def test_normalize_and_checked_c0():
    measure = normalize(MeasureSpec(LinearPhi(2.0), Disk(1.0)))
    assert measure.normalized
    assert abs(measure.c0 * normalization_constant(measure) - 1.0) <= 1e-12
    assert abs(MeasureSpec.gaussian().c0 - 1.0 / (2.0 * math.pi)) <= 1e-15
    with pytest.raises(PreconditionError):
        MeasureSpec(PowerPhi(0.5, 2.0), Disk(1.0), 1.0, True)
    with pytest.raises(PreconditionError):
        MeasureSpec(PowerPhi(0.5, 2.0), Disk(1.0), 0.0)


def test_phi_from_descriptor():
    assert phi_from_descriptor({"kind": "power", "c": 0.5, "p": 2}) == PowerPhi(0.5, 2.0)
    assert phi_from_descriptor({"kind": "Exp_M1", "a": 1.0}) == Expm1Phi(1.0)
    with pytest.raises(ConfigError, match="measure.phi.p"):
        phi_from_descriptor({"kind": "power", "c": 0.5})
    with pytest.raises(ConfigError, match="unknown phi kind"):
        phi_from_descriptor({"kind": "cosh", "a": 1.0})
    with pytest.raises(ConfigError, match="expected one of"):
        phi_from_descriptor({"kind": "cosh", "a": 1.0})
    with pytest.raises(PhiValidationError, match="measure.phi"):
        phi_from_descriptor({"kind": "power", "c": 0.5, "p": 0.5})
