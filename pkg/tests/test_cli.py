import orjson
import pytest
from typer.testing import CliRunner

from cft_construct.interfaces.cli import app
from cft_construct.modules.morphism_builder import to_document

runner = CliRunner()

SOLUTION = "4449545,-1389743/2,760267/2,-118739/2"


@pytest.fixture
def job_file(tmp_path):
    def write(**job):
        path = tmp_path / "job.json"
        path.write_bytes(orjson.dumps({"group": [2, 2], "alphas": ["37/16"], **job}))
        return path

    return write


def test_verify_norm():
    result = runner.invoke(app, ["verify-norm", "--basis", "41,137", "--coords", SOLUTION, "--target", "37/16"])
    assert result.exit_code == 0
    assert "N = 37/16" in result.stdout


def test_verify_norm_mismatch():
    result = runner.invoke(app, ["verify-norm", "--basis", "41,137", "--coords", SOLUTION, "--target", "37"])
    assert result.exit_code == 3


def test_verify_norm_bad_basis():
    result = runner.invoke(app, ["verify-norm", "--basis", "41", "--coords", "1", "--target", "1"])
    assert result.exit_code == 3


def test_replay_fixture():
    assert runner.invoke(app, ["replay-fixture", "rational_biquadratic"]).exit_code == 0
    assert runner.invoke(app, ["replay-fixture", "no_such_example"]).exit_code == 3


def test_construct_analyze_poly(job_file, tmp_path):
    data_path = tmp_path / "data.json"
    result = runner.invoke(app, ["construct", "--config", str(job_file()), "--out", str(data_path)])
    assert result.exit_code == 0
    document = orjson.loads(data_path.read_bytes())
    assert document["v_places"] == ["(41)"]
    assert document["w_places"] == ["(137)"]

    result = runner.invoke(app, ["analyze", str(data_path), "--json", "--split", "3"])
    assert result.exit_code == 0
    assert "hnp" in result.stdout

    result = runner.invoke(app, ["poly", str(data_path), "--projection", "1"])
    assert result.exit_code == 0
    assert "X^2 - X - 10" in result.stdout


def test_construct_search_bound(job_file):
    result = runner.invoke(app, ["construct", "--config", str(job_file()), "--search-bound", "30"])
    assert result.exit_code == 2


def test_construct_invalid_group(job_file):
    result = runner.invoke(app, ["construct", "--config", str(job_file(group=[1]))])
    assert result.exit_code == 3


def test_construct_bad_override(job_file, tmp_path):
    overrides = tmp_path / "overrides.json"
    overrides.write_bytes(orjson.dumps({"v_places": ["17"]}))
    result = runner.invoke(app, ["construct", "--config", str(job_file()), "--override-file", str(overrides)])
    assert result.exit_code == 3


def test_poly_needs_rational_field(imag47_data, tmp_path):
    data_path = tmp_path / "imag.json"
    data_path.write_bytes(to_document(imag47_data).to_json())
    assert runner.invoke(app, ["poly", str(data_path)]).exit_code == 3
