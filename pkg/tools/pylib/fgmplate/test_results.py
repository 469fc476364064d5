import io
import json

import numpy as np
import pytest

from .analysis import solve_modes
from .assembly import assemble
from .errors import FGMPlateError
from .kinematics import DOF_LABELS, PlateModel
from .material import SandwichLayup, default_materials
from .mesh import build_mesh
from .options import config_from_dict
from .results import (DataFile, ResultTable, format_cell, provenance, read_mode_archive,
                      write_mode_archive, write_profile_csv)


def test_format_cell():
    assert format_cell(1.234567) == "1.23457"
    assert format_cell(np.float64(2)) == "2.00000"
    assert format_cell(-1e-7) == "0.00000"
    assert format_cell(-0.5) == "-0.50000"
    assert format_cell(3) == "3"
    assert format_cell(True) == "true"
    assert format_cell(None) == ""
    assert format_cell("HSDT13") == "HSDT13"


def table():
    out = ResultTable("static", ["case", "n", "w", "w_point", "monotone"], {"config_hash": "abc"})
    out.add_row(case="HSDT13-A1-1-1-n1-S10", n=1.0, w=np.float64(0.123456789), w_point="0.5,0.5,0",
                monotone=True)
    out.add_row(case="FSDT5-A1-1-1-n1-S10", n=1.0, w=0.2)
    return out


def test_table_rows():
    t = table()
    assert len(t) == 2
    assert t.column("w") == [0.123456789, 0.2]
    assert t.rows[1]["monotone"] is None
    with pytest.raises(FGMPlateError):
        t.add_row(case="x", temperature=1.0)
    t.extend_columns(["residual", "w"])
    assert t.columns[-1] == "residual"
    assert all(row["residual"] is None for row in t)


def test_csv_text():
    lines = table().to_csv().split("\r\n")
    assert lines[0] == "case,n,w,w_point,monotone"
    assert lines[1] == 'HSDT13-A1-1-1-n1-S10,1.00000,0.12346,"0.5,0.5,0",true'
    assert lines[2] == "FSDT5-A1-1-1-n1-S10,1.00000,0.20000,,"
    assert lines[3] == ""


def test_write_and_read(tmp_path):
    t = table()
    csv_path, json_path = t.write(str(tmp_path / "out"), "static")
    assert csv_path.endswith("static.csv") and json_path.endswith("static.json")

    assert ResultTable.read_json(json_path) == t
    with io.open(json_path, encoding="utf-8") as f:
        assert json.load(f)["provenance"] == {"config_hash": "abc"}

    back = ResultTable.read_csv(csv_path)
    assert back.title == "static"
    assert back.column("w") == [0.12346, 0.2]
    assert back.column("monotone") == [True, None]
    assert back.column("w_point") == ["0.5,0.5,0", None]

    # Writing again gives the same bytes
    first = open(csv_path, "rb").read()
    t.write(str(tmp_path / "out"), "static")
    assert open(csv_path, "rb").read() == first


def test_provenance_is_reproducible():
    config = config_from_dict({"layup": {"n": [0, 1]}})
    info = provenance(config, modes=3)
    assert info == provenance(config_from_dict({"layup": {"n": [0, 1]}}), modes=3)
    assert info["config_hash"] == config.config_hash()
    assert info["scheme"] == "RuleOfMixtures"
    assert info["quadrature"]["thickness_points_per_layer"] == 10
    assert info["modes"] == 3
    json.dumps(info)


def test_write_profile_csv(tmp_path):
    rows = [{"case": "c", "model": "HSDT13", "mode": None, "station_x": 0.5, "station_y": 0.5,
             "quantity": "u", "z": -0.5, "value": 1.0 / 3.0, "layer": 1}]
    path = write_profile_csv(str(tmp_path / "profiles" / "c-profile-u.csv"), rows)
    lines = io.open(path, encoding="utf-8", newline="").read().split("\r\n")
    assert lines[0] == "case,model,mode,station_x,station_y,quantity,z,value,layer"
    assert lines[1] == "c,HSDT13,,5.0000000000e-01,5.0000000000e-01,u,-5.0000000000e-01,3.3333333333e-01,1"


def test_mode_archive(tmp_path):
    pytest.importorskip("netCDF4")
    alumina, aluminum, _ = default_materials()
    stack = SandwichLayup.from_ratio("1-2-1", 0.1, "A", 1.0, alumina, aluminum)
    modal = solve_modes(assemble(build_mesh(1.0, 1.0, 2, 2), PlateModel("HSDT9"), stack,
                                 "RuleOfMixtures"), m=2)
    omegas = modal.frequency_parameters()
    path = write_mode_archive(str(tmp_path / "modes.nc"), modal, "HSDT9-A1-2-1-n1-S10", omegas)

    data = read_mode_archive(path)
    assert data["case"] == "HSDT9-A1-2-1-n1-S10"
    assert data["model"] == "HSDT9"
    assert data["dof_labels"] == list(DOF_LABELS)
    assert np.allclose(data["Omega"], omegas)
    assert np.allclose(data["eigenvalue"], modal.eigenvalues)
    assert data["dofs"].shape == (2, 21, len(DOF_LABELS))
    assert np.allclose(data["dofs"], modal.nodal_modes())


def test_datafile_rank_check(tmp_path):
    pytest.importorskip("netCDF4")
    with DataFile(str(tmp_path / "x.nc"), create=True) as f:
        f.write("a", np.arange(3.0), ("i",))
        with pytest.raises(FGMPlateError):
            f.write("b", np.zeros((2, 2)), ("i",))
        with pytest.raises(FGMPlateError):
            f.write("c", np.zeros(4), ("i",))
    with DataFile(str(tmp_path / "x.nc")) as f:
        assert f.keys() == ["a"]
        with pytest.raises(FGMPlateError):
            f.write("d", np.zeros(3), ("i",))
