import json
import logging
import os

import pytest

from . import cli
from .errors import AcceptanceError, SolverError

TINY = ["-s", "mesh:nx=2", "-s", "mesh:ny=2", "-s", "analysis:modes=1", "-s", "output:netcdf=false", "-q"]


@pytest.fixture(autouse=True)
def restore_logging():
    logger = logging.getLogger("fgmplate")
    saved = logger.handlers[:], logger.level, logger.propagate
    yield
    logger.handlers, logger.level, logger.propagate = saved


def test_validate_config(capsys, tmp_path):
    path = tmp_path / "plate.json"
    path.write_text(u'{"layup": {"n": [0, 1]}}')
    assert cli.main(["validate-config", "-c", str(path), "-q"]) == cli.EXIT_OK
    settings = json.loads(capsys.readouterr().out)
    assert settings["layup"]["n"] == [0.0, 1.0]
    assert settings["mesh"]["nx"] == 8


@pytest.mark.parametrize("argv", [
    ["validate-config", "-c", "missing.json"],
    ["validate-config", "-s", "layup:n=-1"],
    ["static", "-s", "plate:a=0"] + TINY,
])
def test_configuration_errors(argv):
    assert cli.main(argv) == cli.EXIT_CONFIG


def test_usage_error():
    with pytest.raises(SystemExit) as err:
        cli.main(["vibrate"])
    assert err.value.code == 2


def test_modal_run(capsys, tmp_path):
    out = str(tmp_path / "results")
    assert cli.main(["modal", "-o", out] + TINY) == cli.EXIT_OK
    assert sorted(os.listdir(out)) == ["modal.csv", "modal.json"]
    stdout = capsys.readouterr().out
    assert stdout.startswith("case,model,type,ratio,n,a_over_h,mesh,scheme,materials,Omega1,residual\r\n")
    with open(os.path.join(out, "modal.json")) as f:
        assert json.load(f)["rows"][0]["case"] == "HSDT13-A1-1-1-n1-S10"


def test_named_output_and_unmatched_check(tmp_path):
    out = str(tmp_path)
    argv = ["converge", "-o", out, "--check", "golden", "-s", "output:case=\"run1\"",
            "-s", "mesh:sequence=[[2, 2], [4, 4]]"] + TINY
    # 2x2 and 4x4 meshes have no reference values
    assert cli.main(argv) == cli.EXIT_OK
    assert sorted(os.listdir(out)) == ["run1.csv", "run1.json"]


def test_profile_run(tmp_path):
    out = str(tmp_path)
    argv = ["profile", "-o", out, "-s", "profile:quantities=[\"w\"]", "-s", "profile:samples_per_layer=2"]
    assert cli.main(argv + TINY) == cli.EXIT_OK
    assert os.listdir(out) == ["HSDT13-A1-1-1-n1-S10-profile-w.csv"]


def test_failure_exit_codes(monkeypatch, tmp_path):
    def failing_check(table):
        raise AcceptanceError("1 value(s) outside tolerance")

    monkeypatch.setattr(cli, "check", failing_check)
    assert cli.main(["modal", "-o", str(tmp_path), "--check", "golden"] + TINY) == cli.EXIT_ACCEPTANCE

    def failing_study(config, directory=None, progress=False):
        raise SolverError("factorization failed")

    monkeypatch.setattr(cli, "run_study", failing_study)
    assert cli.main(["static", "-o", str(tmp_path)] + TINY) == cli.EXIT_SOLVER
