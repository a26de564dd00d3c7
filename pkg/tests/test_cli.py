import csv
import io
import json

import numpy as np
import pytest
import yaml

from typer.testing import CliRunner

from pyUSD.cli import app
from pyUSD.core import ProblemFile, SolutionFile

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(arg) for arg in args])


def test_solve_triad(fixture_file):
    result = invoke("solve", fixture_file("triad.json"))

    assert result.exit_code == 0
    solution = SolutionFile.from_json_string(result.stdout)

    assert solution.inconclusive_probability == pytest.approx(0.8386, abs=5e-4)
    assert solution.active_face == [1]
    assert solution.gram_volume == pytest.approx(0.16)
    np.testing.assert_allclose(solution.dual_norms_squared, [0.35, 0.75, 0.64])


def test_solve_orthonormal(fixture_file):
    result = invoke("solve", fixture_file("orthonormal.json"))

    assert result.exit_code == 0
    assert json.loads(result.stdout)["inconclusive_probability"] == pytest.approx(0.0, abs=1e-15)


def test_solve_weighted(fixture_file):
    result = invoke("solve", fixture_file("weighted.json"), "--oracle", 200)

    assert result.exit_code == 0
    solution = json.loads(result.stdout)

    assert solution["inconclusive_probability"] == pytest.approx(0.8416, abs=5e-4)
    assert solution["active_face"] == []
    assert abs(solution["diagnostics"]["determinant"]) < 1e-8
    assert solution["diagnostics"]["oracle_gap"] >= -1e-4


def test_solve_with_oracle(fixture_file):
    result = invoke("solve", fixture_file("triad.json"), "--oracle", 100)

    assert result.exit_code == 0
    diagnostics = json.loads(result.stdout)["diagnostics"]

    assert diagnostics["oracle_gap"] >= -1e-4
    assert diagnostics["oracle_gap"] <= diagnostics["oracle_resolution_bound"] + 1e-12


def test_solve_yaml_output(fixture_file):
    result = invoke("solve", fixture_file("subspace.json"), "--format", "yaml")

    assert result.exit_code == 0
    data = yaml.safe_load(result.stdout)
    assert data["inconclusive_probability"] == pytest.approx(0.4, abs=1e-9)


def test_solve_with_config(fixture_file, tmp_path):
    config = tmp_path / "settings.toml"
    config.write_text("n_jobs = 1\npsd_tolerance = 1e-10\n")

    result = invoke("solve", fixture_file("triad.json"), "--config", str(config))
    assert result.exit_code == 0


def test_solve_hdf5(fixture_file, tmp_path):
    path = tmp_path / "solution.h5"
    result = invoke("solve", fixture_file("triad.json"), "--hdf5", str(path))

    assert result.exit_code == 0
    assert path.exists()


def test_solve_is_deterministic(fixture_file):
    first = invoke("solve", fixture_file("weighted.json"))
    second = invoke("solve", fixture_file("weighted.json"))

    assert first.stdout == second.stdout


def test_solve_yaml_input(fixture_file):
    result = invoke("solve", fixture_file("two_states.yaml"))

    assert result.exit_code == 0
    assert json.loads(result.stdout)["inconclusive_probability"] == pytest.approx(0.52)


def test_dependent_states_exit_code(fixture_file):
    result = invoke("solve", fixture_file("dependent.json"))

    assert result.exit_code == 2
    assert "linearly dependent" in result.output


def test_unnormalized_states_exit_code(fixture_file):
    result = invoke("solve", fixture_file("unnormalized.json"))

    assert result.exit_code == 1
    assert "State 1" in result.output


def test_normalize_flag(fixture_file):
    result = invoke("solve", fixture_file("unnormalized.json"), "--normalize")
    assert result.exit_code == 0


def test_missing_file_exit_code(tmp_path):
    result = invoke("solve", tmp_path / "missing.json")
    assert result.exit_code == 1


def test_malformed_field_exit_code(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"states": [[[1.0, 0.0]]], "priors": [0.5, 0.5]}))

    result = invoke("solve", path)

    assert result.exit_code == 1
    assert "priors" in result.output


def test_posterior_subspace(fixture_file):
    result = invoke("posterior", fixture_file("subspace.json"))

    assert result.exit_code == 0
    report = json.loads(result.stdout)

    assert len(report["outcomes"]) == 1
    np.testing.assert_allclose(np.array(report["posteriors"])[:, 0], [0.0, 0.5, 0.5], atol=1e-9)
    assert report["outcome_entropies"][0] == pytest.approx(np.log(2.0), abs=1e-9)


def test_posterior_triad(fixture_file):
    result = invoke("posterior", fixture_file("triad.json"))

    assert result.exit_code == 0
    report = json.loads(result.stdout)

    assert len(report["outcomes"]) == 2
    assert report["initial_entropy"] == pytest.approx(np.log(3.0))


def test_posterior_merged(fixture_file):
    result = invoke("posterior", fixture_file("subspace.json"), "--merged")

    assert result.exit_code == 0
    report = json.loads(result.stdout)

    assert "outcomes" not in report
    np.testing.assert_allclose(report["merged_posterior"], [0.0, 0.5, 0.5], atol=1e-9)
    assert report["merged_entropy"] == pytest.approx(np.log(2.0), abs=1e-9)


def test_posterior_bits(fixture_file):
    result = invoke("posterior", fixture_file("subspace.json"), "--bits")

    assert result.exit_code == 0
    report = json.loads(result.stdout)

    assert report["outcome_entropies"][0] == pytest.approx(1.0, abs=1e-9)
    assert report["initial_entropy"] == pytest.approx(np.log2(3.0), abs=1e-12)
    assert report["merged_entropy"] == pytest.approx(1.0, abs=1e-9)


def test_posterior_orthonormal(fixture_file):
    result = invoke("posterior", fixture_file("orthonormal.json"))

    assert result.exit_code == 0
    assert "no inconclusive outcomes" in result.output
    assert '"outcomes": []' in result.output


def test_simulate_subspace(fixture_file):
    result = invoke("simulate", fixture_file("subspace.json"), "--trials", 100000, "--seed", 7)

    assert result.exit_code == 0
    report = json.loads(result.stdout)

    assert abs(report["empirical_inconclusive"] - 0.4) <= 0.0047
    assert report["misidentifications"] == 0


def test_simulate_single_trial(fixture_file):
    result = invoke("simulate", fixture_file("triad.json"), "--trials", 1)

    assert result.exit_code == 0
    assert np.array(json.loads(result.stdout)["counts"]).sum() == 1


def test_simulate_split(fixture_file):
    result = invoke("simulate", fixture_file("triad.json"), "--trials", 1000, "--split")

    assert result.exit_code == 0
    assert json.loads(result.stdout)["labels"] == ["1", "2", "3", "0:1", "0:2"]


def read_surface(output):
    rows = list(csv.reader(io.StringIO(output)))
    return rows[0], np.array(rows[1:], dtype=float)


def test_surface_triad(fixture_file):
    result = invoke("surface", fixture_file("triad.json"))

    assert result.exit_code == 0
    header, points = read_surface(result.stdout)

    assert header == ["k1", "k2", "k3"]
    assert np.any(np.all(np.abs(points - [2.857143, 0.0, 0.0]) < 1e-6, axis=1))


def test_surface_subspace(fixture_file):
    result = invoke("surface", fixture_file("subspace.json"), "--resolution", 41)

    _, points = read_surface(result.stdout)
    assert np.any(np.all(np.abs(points - [1.5625, 0.625, 0.625]) < 1e-6, axis=1))


def test_surface_wrong_dimension(fixture_file):
    result = invoke("surface", fixture_file("two_states.yaml"))

    assert result.exit_code == 3
    assert "N=3" in result.output


def test_random_problem():
    result = invoke("random", 4, "--seed", 3, "--random-priors")

    assert result.exit_code == 0
    ensemble = ProblemFile.from_json_string(result.stdout).to_ensemble()

    assert ensemble.n == 4
    assert invoke("random", 4, "--seed", 3, "--random-priors").stdout == result.stdout
