import io
import json
import math
import os

import numpy as np
import pandas as pd
import pytest
from constants_test import (
    REL_PATH_DATA_ALL_DISKS,
    REL_PATH_DATA_DEFAULT_RUN,
    REL_PATH_DATA_MALFORMED,
    REL_PATH_DATA_SQUARE_COMPARE,
    REL_PATH_DATA_TAIL_SQUARE,
)
from utils_tests import data_path, load_test_config

from mixmeas.asymptotics import comparison_check, rate_sweep_first
from mixmeas.common.errors import ConfigError, PhiValidationError, PolygonOrientationError
from mixmeas.io_manager import (
    RunParameters,
    export_report_json,
    export_sweep_csv,
    load_config,
    parse_config,
    serialize_config,
)
from mixmeas.models.bodies2d import Disk, Ellipse, PolygonBody
from mixmeas.models.densities import MeasureSpec, PowerPhi

MINIMAL = """
[bodies.disk]
kind = "disk"
radius = 1.0

[measure]
phi = { kind = "linear", c = 1.0 }
gauge = "disk"
"""


def test_data_folders_exist():
    for rel_path in (REL_PATH_DATA_DEFAULT_RUN, REL_PATH_DATA_ALL_DISKS, REL_PATH_DATA_SQUARE_COMPARE,
                     REL_PATH_DATA_TAIL_SQUARE):
        assert os.path.exists(data_path(rel_path))


def test_load_default_run():
    config = load_test_config(REL_PATH_DATA_DEFAULT_RUN)
    assert config.bodies["ellipse"] == Ellipse(2.0, 1.0)
    assert config.bodies["disk"] == Disk(1.0)
    assert isinstance(config.bodies["square"], PolygonBody)
    assert config.measure.phi == PowerPhi(0.5, 2.0)
    assert config.measure.normalized
    assert abs(config.measure.c0 - 1.0 / (2.0 * math.pi)) <= 1e-15
    assert config.gauge_name == "disk"
    assert config.body("K") == Ellipse(2.0, 1.0)
    assert config.body("B") == Disk(1.0)
    assert config.run.kind == "first"
    assert config.run.points == 16
    assert abs(config.run.t - 2.0) <= 1e-15


def test_load_all_disks():
    config = load_test_config(REL_PATH_DATA_ALL_DISKS)
    assert config.measure == MeasureSpec.gaussian(normalized=False)
    assert config.run.kind == "second"


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_config(data_path(REL_PATH_DATA_DEFAULT_RUN, "missing.toml"))


def test_malformed_fixtures():
    with pytest.raises(ConfigError, match="syntax"):
        load_test_config(REL_PATH_DATA_MALFORMED, "syntax_error.toml")
    with pytest.raises(PolygonOrientationError, match="bodies.square"):
        load_test_config(REL_PATH_DATA_MALFORMED, "clockwise_polygon.toml")
    with pytest.raises(ConfigError, match="roles.K"):
        load_test_config(REL_PATH_DATA_MALFORMED, "unknown_body.toml")
    with pytest.raises(PhiValidationError):
        load_test_config(REL_PATH_DATA_MALFORMED, "bad_phi.toml")


@pytest.mark.parametrize("extra, key_path", [
    ("[solver]\nname = 'x'\n", "solver"),
    ("[roles]\nQ = 'disk'\n", "roles.Q"),
    ("[run]\nspeed = 2\n", "run.speed"),
    ("[run]\npoints = 1\n", "run.points"),
    ("[run]\nt = -1.0\n", "run.t"),
    ("[run]\nt_min = 5.0\nt_max = 2.0\n", "run.t_min"),
    ("[run]\nkind = 'third'\n", "run.kind"),
])
def test_semantic_errors_name_the_key(extra, key_path):
    with pytest.raises(ConfigError, match=key_path):
        parse_config(MINIMAL + extra)


def test_measure_errors():
    with pytest.raises(ConfigError, match="measure.gauge"):
        parse_config(MINIMAL.replace('gauge = "disk"', 'gauge = "ellipse"'))
    with pytest.raises(ConfigError, match="measure.colour"):
        parse_config(MINIMAL + 'colour = "red"\n')
    with pytest.raises(ConfigError, match="bodies"):
        parse_config('[measure]\nphi = { kind = "linear", c = 1.0 }\ngauge = "disk"\n')


def test_debug_density():
    config = parse_config(MINIMAL.replace('phi = { kind = "linear", c = 1.0 }', "debug_zero_density = true"))
    assert config.measure.is_debug
    with pytest.raises(ConfigError):
        parse_config(MINIMAL + "debug_zero_density = true\n")


def test_missing_role():
    config = parse_config(MINIMAL)
    with pytest.raises(ConfigError, match="roles.A"):
        config.body("A")


def test_serialize_round_trip():
    for rel_path in (REL_PATH_DATA_DEFAULT_RUN, REL_PATH_DATA_ALL_DISKS, REL_PATH_DATA_SQUARE_COMPARE):
        config = load_test_config(rel_path)
        assert parse_config(serialize_config(config)) == config


def test_sweep_grid_defaults():
    grid = RunParameters().sweep_grid(MeasureSpec.gaussian())
    assert len(grid) == 16
    assert abs(grid[0] - 2.5) <= 1e-12
    assert abs(grid[-1] - 14.0) <= 1e-12
    linear = parse_config(MINIMAL)
    grid = linear.run.sweep_grid(linear.measure)
    assert abs(grid[-1] - 40.0) <= 1e-12
    assert np.allclose(np.diff(np.log(grid)), np.log(16.0) / 15.0)


def test_export_sweep_csv(tmp_path):
    sweep = rate_sweep_first(Disk(1.0), Disk(1.0), MeasureSpec.gaussian(normalized=False), [3.0, 4.0, 5.0])
    destination = tmp_path / "out" / "sweep.csv"
    export_sweep_csv(sweep, str(destination))
    df = pd.read_csv(destination, float_precision="round_trip")
    assert list(df.columns) == ["t", "sign", "log_abs", "ratio", "phi_rt", "nodes"]
    assert len(df) == 3
    # 17 significant digits survive the text round trip
    assert df["log_abs"].iloc[2] == sweep.log_abs[2]

    stream = io.StringIO()
    export_sweep_csv(sweep, stream)
    assert stream.getvalue().splitlines()[0] == "t,sign,log_abs,ratio,phi_rt,nodes"


def test_export_report_json(tmp_path):
    disk = Disk(1.0)
    square = PolygonBody(((-2.0, -2.0), (2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)))
    report = comparison_check(square, disk, 3.0, disk, MeasureSpec.gaussian(normalized=False), [5.0, 6.0])
    destination = tmp_path / "report.json"
    export_report_json(report, destination)
    with open(destination, encoding="utf-8") as handle:
        document = json.load(handle)
    assert document["verdict"] == "VIOLATED"
    assert document["first_violation_t"] == 5.0
    assert len(document["grid"]) == 2
    assert list(document) == sorted(document)
