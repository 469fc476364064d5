import io
import os

import numpy as np
import pytest

from .errors import FGMPlateError
from .fgmwarnings import AlwaysWarning
from .options import config_from_dict
from .studies import (CASE_COLUMNS, evaluation_points, point_label, run_convergence, run_modal,
                      run_profile, run_static, run_study)

TINY = {"mesh": {"nx": 2, "ny": 2}, "output": {"netcdf": False}}


def tiny(**sections):
    tree = {k: dict(v) for k, v in TINY.items()}
    for name, values in sections.items():
        tree.setdefault(name, {}).update(values)
    return config_from_dict(tree)


def read_lines(path):
    with io.open(path, encoding="utf-8", newline="") as f:
        return f.read().split("\r\n")[:-1]


def test_point_label():
    assert point_label([0.5, 0.5, 0.0]) == "0.5,0.5,0"
    assert point_label([0.0, 0.5, "max"]) == "0,0.5,max"


def test_evaluation_point_overrides():
    points = evaluation_points(tiny(evaluation={"points": {"u": [0, 0.5, 0.5]}}))
    assert points["u"] == [0.0, 0.5, 0.5]
    assert points["w"] == [0.5, 0.5, -0.5]


def test_run_static():
    table = run_static(tiny(layup={"n": [1, 0]}))
    assert table.title == "static"
    assert table.column("case") == ["HSDT13-A1-1-1-n0-S10", "HSDT13-A1-1-1-n1-S10"]
    assert table.columns[:len(CASE_COLUMNS)] == CASE_COLUMNS
    assert table.column("mesh") == ["2x2", "2x2"]
    assert table.column("materials") == ["alumina/aluminum"] * 2
    assert table.column("w_point") == ["0.5,0.5,0"] * 2
    assert all(r <= 1e-8 for r in table.column("residual"))
    # More metal, softer plate
    w0, w1 = table.column("w")
    assert abs(w1) > abs(w0) > 0.0
    assert table.provenance["config_hash"] == tiny(layup={"n": [1, 0]}).config_hash()


def test_run_static_quantities_and_thermal_warning():
    config = tiny(load={"kind": "thermal"}, evaluation={"quantities": ["w", "sxx"]})
    with pytest.warns(AlwaysWarning):
        table = run_static(config)
    (row,) = table.rows
    assert row["loading"] == "thermal"
    assert "u" not in table.columns and "sxx_point" in table.columns
    assert any("alumina" in note for note in table.provenance["assumptions"])
    assert row["w"] != 0.0


def test_run_modal(tmp_path):
    config = tiny(analysis={"model": ["HSDT9", "HSDT13"], "modes": 2})
    table = run_modal(config, directory=str(tmp_path))
    assert table.column("model") == ["HSDT13", "HSDT9"]
    assert all(0.0 < o1 <= o2 for o1, o2 in zip(table.column("Omega1"), table.column("Omega2")))
    assert table.provenance["modes"] == 2
    # output:netcdf is off
    assert os.listdir(str(tmp_path)) == []


def test_run_modal_archive(tmp_path):
    pytest.importorskip("netCDF4")
    config = tiny(analysis={"modes": 1}, output={"netcdf": True})
    run_modal(config, directory=str(tmp_path))
    assert os.listdir(str(tmp_path)) == ["HSDT13-A1-1-1-n1-S10-modes.nc"]


def test_fsdt_warning():
    with pytest.warns(AlwaysWarning):
        run_modal(tiny(analysis={"model": "FSDT5", "modes": 1}))


def test_parallel_rows_match_serial():
    serial = run_modal(tiny(analysis={"modes": 1}, layup={"n": [0, 1, 5]}))
    parallel = run_modal(tiny(analysis={"modes": 1, "workers": 2}, layup={"n": [0, 1, 5]}))
    assert parallel.column("case") == serial.column("case")
    assert np.allclose(parallel.column("Omega1"), serial.column("Omega1"), rtol=1e-12, atol=0.0)


def test_run_convergence():
    config = tiny(analysis={"modes": 1}, mesh={"sequence": [[2, 2], [4, 4], [6, 6]]})
    table = run_convergence(config)
    assert table.column("mesh") == ["2x2", "4x4", "6x6"]
    nfree = table.column("nfree")
    assert nfree[0] < nfree[1] < nfree[2]
    assert table.column("change")[0] is None
    omega = table.column("Omega1")
    assert np.allclose(np.diff(omega), table.column("change")[1:])
    assert table.provenance["monotone"] == all(table.column("monotone"))


def test_static_profile(tmp_path):
    config = tiny(profile={"quantities": ["u", "w"], "stations": [[0.5, 0.5]], "samples_per_layer": 3})
    written = run_profile(config, str(tmp_path))
    names = sorted(os.path.basename(p) for p in written)
    assert names == ["HSDT13-A1-1-1-n1-S10-profile-u.csv", "HSDT13-A1-1-1-n1-S10-profile-w.csv"]
    lines = read_lines(os.path.join(str(tmp_path), names[1]))
    assert lines[0] == "case,model,mode,station_x,station_y,quantity,z,value,layer"
    assert len(lines) == 1 + 3 * 3
    assert [line.rsplit(",", 1)[1] for line in lines[1:]] == ["1"] * 3 + ["2"] * 3 + ["3"] * 3
    z = [float(line.split(",")[6]) for line in lines[1:]]
    assert z[0] == -0.5 and z[-1] == 0.5


def test_modal_profile(tmp_path):
    config = tiny(analysis={"modes": 2}, profile={"source": "modal", "modes": 2, "quantities": ["w"],
                                                  "stations": [[0.5, 0.5]], "samples_per_layer": 2})
    (path,) = run_profile(config, str(tmp_path))
    lines = read_lines(path)
    assert len(lines) == 1 + 2 * 3 * 2
    assert {line.split(",")[2] for line in lines[1:]} == {"1", "2"}
    values = [abs(float(line.split(",")[7])) for line in lines[1:] if line.split(",")[2] == "1"]
    assert np.isclose(max(values), 1.0)


def test_run_study():
    config = tiny(analysis={"type": "modal", "modes": 1})
    assert run_study(config).title == "modal"
    with pytest.raises(FGMPlateError):
        run_study(config.with_analysis("profile"))
