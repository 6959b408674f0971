import dataclasses
import io
import math

import pandas as pd
import pytest
from constants_test import (
    BALL_FIRST_T1,
    BALL_GAUSS_SECOND_T2,
    BALL_SECOND_T2,
    DICT_MALFORMED_FILE_TO_EXIT_CODE,
    REL_PATH_DATA_ALL_DISKS,
    REL_PATH_DATA_DEFAULT_RUN,
    REL_PATH_DATA_MALFORMED,
    REL_PATH_DATA_SQUARE_COMPARE,
    REL_PATH_DATA_TAIL_SQUARE,
)
from utils_tests import data_path, load_test_config, rel_err

from mixmeas.cli import build_parser, exit_code_for, main, run_command
from mixmeas.common.errors import (
    ConfigError,
    NumericalFailureError,
    ThresholdError,
    VerificationError,
)
from mixmeas.models.densities import MeasureSpec

pytestmark = pytest.mark.usefixtures("reset_logging")


def parse_lines(text):
    values = {}
    for line in text.splitlines():
        if " = " in line:
            key, value = line.split(" = ", 1)
            values[key.strip()] = value.strip()
    return values


def build_config(config, **changes):
    return dataclasses.replace(config, run=dataclasses.replace(config.run, **changes))


def test_second_on_all_disks(capsys):
    code = main(["second", "--config", data_path(REL_PATH_DATA_ALL_DISKS), "--t", "2"])
    assert code == 0
    values = parse_lines(capsys.readouterr().out)
    assert values["sign"] == "-1"
    assert abs(float(values["value"]) + 2.55101) <= 1e-5
    assert rel_err(float(values["value"]), BALL_SECOND_T2) <= 1e-8
    assert int(values["nodes_used"]) > 0
    assert "outside_hypotheses" not in values


def test_first_and_gauss_on_all_disks():
    config = load_test_config(REL_PATH_DATA_ALL_DISKS)
    stream = io.StringIO()
    assert run_command(build_config(config, t=1.0), "first", stream) == 0
    assert rel_err(float(parse_lines(stream.getvalue())["value"]), BALL_FIRST_T1) <= 1e-8
    stream = io.StringIO()
    assert run_command(config, "gauss", stream) == 0
    assert rel_err(float(parse_lines(stream.getvalue())["value"]), BALL_GAUSS_SECOND_T2) <= 1e-8


def test_unrepresentable_value_keeps_the_log():
    config = build_config(load_test_config(REL_PATH_DATA_ALL_DISKS), t=40.0)
    stream = io.StringIO()
    assert run_command(config, "first", stream) == 0
    values = parse_lines(stream.getvalue())
    assert values["value"] == "not representable"
    assert abs(float(values["log_abs"]) - (math.log(80.0 * math.pi) - 800.0)) <= 1e-8


def test_sweep_writes_csv(tmp_path, capsys):
    destination = tmp_path / "sweep.csv"
    code = main(["sweep", "--config", data_path(REL_PATH_DATA_DEFAULT_RUN), "--out", str(destination)])
    assert code == 0
    df = pd.read_csv(destination)
    assert list(df.columns) == ["t", "sign", "log_abs", "ratio", "phi_rt", "nodes"]
    assert len(df) == 16
    assert (df["sign"] == 1).all()
    assert abs(df["t"].iloc[0] - 2.5) <= 1e-12
    assert abs(df["t"].iloc[-1] - 14.0) <= 1e-12
    assert "converged = True" in capsys.readouterr().err


def test_second_sweep_overrides(capsys):
    code = main(["sweep", "--config", data_path(REL_PATH_DATA_ALL_DISKS), "--kind", "second",
                 "--t-min", "3", "--t-max", "6", "--points", "4"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "t,sign,log_abs,ratio,phi_rt,nodes,ratio_corrected"
    assert len(lines) == 5


def test_sweep_before_the_threshold_is_a_numerical_failure():
    code = main(["sweep", "--config", data_path(REL_PATH_DATA_ALL_DISKS), "--kind", "second",
                 "--t-min", "0.5", "--t-max", "3", "--points", "4"])
    assert code == 3


def test_tail_writes_csv(capsys):
    code = main(["tail", "--config", data_path(REL_PATH_DATA_TAIL_SQUARE)])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 9


def test_tail_needs_normalized_measure():
    assert main(["tail", "--config", data_path(REL_PATH_DATA_ALL_DISKS)]) == 2


def test_inradius_and_normalize(capsys):
    assert main(["inradius", "--config", data_path(REL_PATH_DATA_DEFAULT_RUN)]) == 0
    values = parse_lines(capsys.readouterr().out)
    assert abs(float(values["r"]) - 1.0) <= 1e-7
    angles = [float(a) for a in values["tangency_angles"].split(",")]
    assert len(angles) == 2
    assert main(["normalize", "--config", data_path(REL_PATH_DATA_DEFAULT_RUN)]) == 0
    values = parse_lines(capsys.readouterr().out)
    assert abs(float(values["Z"]) - 2.0 * math.pi) <= 1e-10


def test_compare_reports_violation(tmp_path):
    destination = tmp_path / "report.json"
    code = main(["compare", "--config", data_path(REL_PATH_DATA_SQUARE_COMPARE), "--out", str(destination)])
    assert code == 0
    assert '"verdict": "VIOLATED"' in destination.read_text(encoding="utf-8")
    code = main(["compare", "--config", data_path(REL_PATH_DATA_SQUARE_COMPARE), "--R", "1",
                 "--out", str(destination)])
    assert code == 0
    assert '"verdict": "HOLDS"' in destination.read_text(encoding="utf-8")


@pytest.mark.parametrize("file_name, expected", DICT_MALFORMED_FILE_TO_EXIT_CODE.items())
def test_malformed_configurations(file_name, expected):
    assert main(["first", "--config", data_path(REL_PATH_DATA_MALFORMED, file_name)]) == expected


def test_missing_configuration():
    assert main(["first", "--config", data_path(REL_PATH_DATA_MALFORMED, "absent.toml")]) == 2


def test_invalid_override():
    assert main(["first", "--config", data_path(REL_PATH_DATA_ALL_DISKS), "--t", "-1"]) == 2


def test_unknown_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["fourth"])
    config = load_test_config(REL_PATH_DATA_ALL_DISKS)
    assert run_command(config, "fourth", io.StringIO()) == 2


def test_exit_codes():
    assert exit_code_for(ConfigError("x")) == 2
    assert exit_code_for(FileNotFoundError("x")) == 2
    assert exit_code_for(NumericalFailureError("x")) == 3
    assert exit_code_for(ThresholdError(1.0)) == 3
    assert exit_code_for(VerificationError("x")) == 4
    with pytest.raises(KeyError):
        exit_code_for(KeyError("x"))


def test_first_under_square_gauge():
    config = load_test_config(REL_PATH_DATA_DEFAULT_RUN)
    square_gauge = MeasureSpec(config.measure.phi, config.bodies["square"])
    config = dataclasses.replace(config, measure=square_gauge, gauge_name="square")
    stream = io.StringIO()
    assert run_command(config, "first", stream) == 0
    values = parse_lines(stream.getvalue())
    assert values["sign"] == "1"
    assert float(values["value"]) > 0.0
