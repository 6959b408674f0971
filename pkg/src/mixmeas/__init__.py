from .asymptotics import (
    comparison_check,
    min_energy,
    rate_sweep_first,
    rate_sweep_gaussian_second,
    rate_sweep_second,
    tail_rate,
)
from .common.errors import NumericalFailureError, VerificationError
from .common.log_value import LogValue
from .config_mixmeas import configure_logging
from .io_manager import RunConfig, export_report_json, export_sweep_csv, load_config, parse_config, serialize_config
from .mixed import (
    gaussian_second,
    lebesgue_mixed_area,
    mixed_first,
    mixed_second,
    perimeter,
    steiner_check,
    surface_content,
)
from .models.bodies2d import (
    Disk,
    Ellipse,
    FourierBody,
    PolygonBody,
    area,
    gauge,
    gauge_gradient,
    inradius,
    minkowski_combine,
    radial,
)
from .models.densities import Expm1Phi, LinearPhi, MeasureSpec, PowerPhi, normalization_constant, normalize
from .oracles import body_mass, body_tail_mass, fd_first, fd_second
from .results import ComparisonReport, MixedValue, RateSweep
from .verification import run_verification_suite

__all__ = [
    "area",
    "body_mass",
    "body_tail_mass",
    "comparison_check",
    "ComparisonReport",
    "configure_logging",
    "Disk",
    "Ellipse",
    "export_report_json",
    "export_sweep_csv",
    "Expm1Phi",
    "fd_first",
    "fd_second",
    "FourierBody",
    "gauge",
    "gauge_gradient",
    "gaussian_second",
    "inradius",
    "lebesgue_mixed_area",
    "LinearPhi",
    "load_config",
    "LogValue",
    "MeasureSpec",
    "min_energy",
    "minkowski_combine",
    "mixed_first",
    "mixed_second",
    "MixedValue",
    "normalization_constant",
    "normalize",
    "NumericalFailureError",
    "parse_config",
    "perimeter",
    "PolygonBody",
    "PowerPhi",
    "radial",
    "rate_sweep_first",
    "rate_sweep_gaussian_second",
    "rate_sweep_second",
    "RateSweep",
    "run_verification_suite",
    "RunConfig",
    "serialize_config",
    "steiner_check",
    "surface_content",
    "tail_rate",
    "VerificationError",
]
