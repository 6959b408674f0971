"""Command-line front end.

::

    mixmeas second --config Data/all_disks/config.toml --t 2
    mixmeas sweep --config Data/default_run/config.toml --kind first --t-min 2.5 --t-max 14 --points 16 --out sweep.csv

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 failed
verification or comparison assertion.
"""

import argparse
import dataclasses
import logging
import math
import sys

from .asymptotics import comparison_check, rate_sweep_first, rate_sweep_gaussian_second, rate_sweep_second, tail_rate
from .common.errors import NumericalFailureError
from .config_mixmeas import configure_logging
from .constants import (
    EXIT_ASSERTION,
    EXIT_NUMERICAL,
    EXIT_SUCCESS,
    EXIT_VALIDATION,
    VALID_COMMANDS,
    VALID_SWEEP_KINDS,
)
from .io_manager import RunConfig, export_report_json, export_sweep_csv, load_config
from .mixed import gaussian_second, mixed_first, mixed_second
from .models.bodies2d import inradius
from .models.densities import normalization_constant
from .results import MixedValue, RateSweep
from .verification import run_verification_suite

OVERRIDE_FLAGS = ("t", "t_min", "t_max", "points", "kind", "R", "tolerance", "out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixmeas", description="Planar mixed measures and their large-dilation rates.")
    parser.add_argument("command", choices=VALID_COMMANDS)
    parser.add_argument("--config", default="config.toml", help="TOML configuration document")
    parser.add_argument("--out", help="output file for sweep, tail and compare (standard output if omitted)")
    parser.add_argument("--t", type=float, help="dilation for first, second and gauss")
    parser.add_argument("--t-min", dest="t_min", type=float)
    parser.add_argument("--t-max", dest="t_max", type=float)
    parser.add_argument("--points", type=int, help="number of log-spaced sweep points")
    parser.add_argument("--kind", choices=VALID_SWEEP_KINDS, help="sweep kind")
    parser.add_argument("--R", dest="R", type=float, help="dilation of L tested by compare")
    parser.add_argument("--tolerance", type=float, help="relative quadrature tolerance")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--log-file")
    return parser


def apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    """Replace ``[run]`` entries by the flags given on the command line."""
    changes = {name: getattr(args, name) for name in OVERRIDE_FLAGS if getattr(args, name, None) is not None}
    if not changes:
        return config
    return dataclasses.replace(config, run=dataclasses.replace(config.run, **changes))


def _print_value(result: MixedValue, stream):
    value = result.to_float()
    print(f"sign = {result.sign}", file=stream)
    print(f"log_abs = {result.log_abs!r}", file=stream)
    if result.sign == 0 or (value != 0.0 and math.isfinite(value)):
        print(f"value = {value!r}", file=stream)
    else:
        print("value = not representable", file=stream)
    print(f"nodes_used = {result.nodes_used}", file=stream)
    if result.outside_hypotheses:
        print("outside_hypotheses = true", file=stream)


def _log_sweep_summary(sweep: RateSweep):
    live = sweep.ratios[sweep.defined]
    last = float(live[-1]) if live.size else math.nan
    logging.info(f"{sweep.kind} sweep summary: last ratio = {last:.6f}, trend_improves = {sweep.trend_improves}, "
                 f"converged = {sweep.converged}")
    if not sweep.converged:
        logging.warning(f"{sweep.kind} sweep: the last ratio lies outside the rate band of -1")


def _dispatch(config: RunConfig, command: str, stream):
    run = config.run
    measure = config.measure
    if command == "first":
        _print_value(mixed_first(config.body("K"), config.body("M"), measure, run.t, run.tolerance), stream)
    elif command == "second":
        A, B, C = config.body("A"), config.body("B"), config.body("C")
        _print_value(mixed_second(A, B, C, measure, run.t, run.tolerance), stream)
    elif command == "gauss":
        A, B, C = config.body("A"), config.body("B"), config.body("C")
        _print_value(gaussian_second(A, B, C, run.t, run.tolerance), stream)
    elif command == "sweep":
        grid = run.sweep_grid(measure)
        if run.kind == "first":
            sweep = rate_sweep_first(config.body("K"), config.body("M"), measure, grid)
        elif run.kind == "second":
            sweep = rate_sweep_second(config.body("A"), config.body("B"), config.body("C"), measure, grid)
        else:
            sweep = rate_sweep_gaussian_second(config.body("A"), config.body("B"), config.body("C"), grid)
        export_sweep_csv(sweep, run.out or stream)
        _log_sweep_summary(sweep)
    elif command == "tail":
        sweep = tail_rate(config.body("K"), measure, run.sweep_grid(measure))
        export_sweep_csv(sweep, run.out or stream)
        _log_sweep_summary(sweep)
    elif command == "inradius":
        result = inradius(config.body("K"), config.gauge_body)
        print(f"r = {result.r!r}", file=stream)
        print("tangency_angles = " + ", ".join(f"{float(a)!r}" for a in result.tangency_angles), file=stream)
    elif command == "compare":
        report = comparison_check(config.body("K"), config.gauge_body, run.R, config.body("M"), measure,
                                  run.sweep_grid(measure))
        export_report_json(report, run.out or stream)
    elif command == "verify":
        run_verification_suite(config)
        print("verification passed", file=stream)
    elif command == "normalize":
        print(f"Z = {normalization_constant(measure)!r}", file=stream)


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the exit-code contract."""
    if isinstance(error, AssertionError):
        return EXIT_ASSERTION
    if isinstance(error, NumericalFailureError):
        return EXIT_NUMERICAL
    if isinstance(error, (ValueError, FileNotFoundError)):
        return EXIT_VALIDATION
    raise error


def run_command(config: RunConfig, command: str, stream=None) -> int:
    """Run one command on a validated configuration and return its exit code.

    Args:
        config (RunConfig): Parsed configuration (with command-line overrides applied).
        command (str): One of ``first``, ``second``, ``gauss``, ``sweep``, ``tail``,
            ``inradius``, ``compare``, ``verify``, ``normalize``.
        stream: Text stream for result lines and stream outputs. Defaults to standard output.

    Returns:
        int: 0 on success, 2 for invalid input, 3 for numerical failure,
        4 for a failed verification or comparison assertion.
    """
    stream = stream or sys.stdout
    if command not in VALID_COMMANDS:
        logging.error(f"Unknown command '{command}'. Valid commands: {VALID_COMMANDS}")
        return EXIT_VALIDATION
    try:
        _dispatch(config, command, stream)
    except Exception as err:
        code = exit_code_for(err)
        logging.error(f"{command} failed: {type(err).__name__}: {err}")
        return code
    return EXIT_SUCCESS


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(getattr(logging, args.log_level), args.log_file)
    try:
        config = apply_overrides(load_config(args.config), args)
    except Exception as err:
        code = exit_code_for(err)
        logging.error(f"Invalid configuration: {err}")
        return code
    return run_command(config, args.command)


if __name__ == "__main__":
    sys.exit(main())
