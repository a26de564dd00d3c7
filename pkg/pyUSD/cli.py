import csv
import io
import typer
import yaml

import numpy as np

from contextlib import contextmanager
from enum import Enum
from scipy.stats import entropy
from typing import Optional

from pyUSD.base.errors import LinearDependenceError, UnsupportedDimensionError
from pyUSD.core import (
    Diagnostics,
    PosteriorReport,
    ProblemFile,
    SimulationConfig,
    SolutionFile,
    SolverSettings,
    StateEnsemble,
)
from pyUSD.linalg import dual_vectors, random_ensemble
from pyUSD.measurement import build_povm, det_inconclusive
from pyUSD.optimization import grid_oracle, optimize, surface_sample
from pyUSD.posterior import decompose_inconclusive, posterior_report
from pyUSD.simulation import run_simulation
from pyUSD.tools.utils import format_number, to_bits

app = typer.Typer(help="Optimal unambiguous discrimination of linearly independent pure states.")


class OutputFormat(str, Enum):
    json = "json"
    yaml = "yaml"


@app.command()
def solve(
    path: str = typer.Argument(..., help="Problem file (JSON or YAML)"),
    oracle: Optional[int] = typer.Option(
        None, help="Also run the grid oracle at this resolution and report the gap"
    ),
    tolerance: Optional[float] = typer.Option(
        None, help="Most negative eigenvalue of A_0 counted as feasible"
    ),
    normalize: bool = typer.Option(False, help="Rescale states to unit norm and priors to unit sum"),
    config: Optional[str] = typer.Option(None, help="Settings file (TOML, JSON or YAML)"),
    output_format: OutputFormat = typer.Option(OutputFormat.json, "--format", help="Output format"),
    hdf5: Optional[str] = typer.Option(None, help="Also write the result to this HDF5 file"),
    n_jobs: Optional[int] = typer.Option(None, help="Number of joblib workers"),
):
    """Finds the measurement with the largest expected gain.

    Args:
        path (str): Problem file with states, priors and values.
        oracle (int, optional): Resolution of the optional grid oracle.
    """

    with _exit_codes():
        settings = _settings(config, psd_tolerance=tolerance, n_jobs=n_jobs)
        ensemble = _load_problem(path, settings, normalize)

        solution = optimize(ensemble, settings)
        duals = dual_vectors(ensemble, settings.independence_tolerance)
        k = solution.k.k

        diagnostics = {
            "min_eigenvalue": solution.min_eigenvalue,
            "determinant": det_inconclusive(duals, k),
        }

        if oracle is not None:
            reference = grid_oracle(ensemble, oracle, settings)
            diagnostics.update(
                oracle_gain=reference.gain,
                oracle_gap=solution.gain - reference.gain,
                oracle_resolution_bound=reference.resolution_bound,
            )

        result = SolutionFile(
            k=k.tolist(),
            gain=solution.gain,
            inconclusive_probability=solution.inconclusive_probability,
            active_face=solution.active_face,
            detection_probabilities=(k * duals.gram_volume).tolist(),
            dual_norms_squared=duals.norms_squared.tolist(),
            gram_volume=duals.gram_volume,
            diagnostics=Diagnostics(**diagnostics),
        )

        _emit(result, output_format, hdf5)


@app.command()
def posterior(
    path: str = typer.Argument(..., help="Problem file (JSON or YAML)"),
    merged: bool = typer.Option(False, help="Report A_0 as a single inconclusive outcome"),
    bits: bool = typer.Option(False, help="Report entropies in bits instead of nats"),
    normalize: bool = typer.Option(False, help="Rescale states to unit norm and priors to unit sum"),
    config: Optional[str] = typer.Option(None, help="Settings file (TOML, JSON or YAML)"),
    output_format: OutputFormat = typer.Option(OutputFormat.json, "--format", help="Output format"),
    hdf5: Optional[str] = typer.Option(None, help="Also write the result to this HDF5 file"),
):
    """Posteriors and entropies (nats, or bits with --bits) of the inconclusive outcomes at the optimum."""

    with _exit_codes():
        settings = _settings(config)
        ensemble = _load_problem(path, settings, normalize)
        povm = _optimal_povm(ensemble, settings)

        if decompose_inconclusive(povm, settings.spectral_cutoff):
            report = posterior_report(ensemble, povm, settings.spectral_cutoff)
        else:
            typer.echo("Note: A_0 vanishes, there are no inconclusive outcomes.", err=True)
            report = _empty_report(ensemble)

        if bits:
            report = _in_bits(report)

        exclude = None
        if merged:
            exclude = {"outcomes", "joint_probabilities", "posteriors", "outcome_entropies", "average_entropy"}

        _emit(report, output_format, hdf5, exclude=exclude)


@app.command()
def simulate(
    path: str = typer.Argument(..., help="Problem file (JSON or YAML)"),
    trials: int = typer.Option(100000, help="Number of simulated signals"),
    seed: int = typer.Option(0, help="Seed of the random streams"),
    split: bool = typer.Option(False, help="Read out the spectral parts of A_0 separately"),
    normalize: bool = typer.Option(False, help="Rescale states to unit norm and priors to unit sum"),
    config: Optional[str] = typer.Option(None, help="Settings file (TOML, JSON or YAML)"),
    output_format: OutputFormat = typer.Option(OutputFormat.json, "--format", help="Output format"),
    n_jobs: Optional[int] = typer.Option(None, help="Number of joblib workers"),
):
    """Monte Carlo run of the optimal measurement."""

    with _exit_codes():
        settings = _settings(config, n_jobs=n_jobs)
        ensemble = _load_problem(path, settings, normalize)
        povm = _optimal_povm(ensemble, settings)

        simulation = SimulationConfig(
            trials=trials, seed=seed, split_inconclusive=split, n_jobs=settings.n_jobs
        )

        _emit(run_simulation(ensemble, povm, simulation), output_format)


@app.command()
def surface(
    path: str = typer.Argument(..., help="Problem file with three states"),
    resolution: int = typer.Option(41, help="Grid points per axis"),
    normalize: bool = typer.Option(False, help="Rescale states to unit norm and priors to unit sum"),
    config: Optional[str] = typer.Option(None, help="Settings file (TOML, JSON or YAML)"),
):
    """Writes points of the surface det(A_0) = 0 as CSV."""

    with _exit_codes():
        settings = _settings(config)
        ensemble = _load_problem(path, settings, normalize)

        if ensemble.n != 3:
            raise UnsupportedDimensionError("surface", 3, ensemble.n)

        duals = dual_vectors(ensemble, settings.independence_tolerance)
        sample = surface_sample(duals, resolution, settings.psd_tolerance)

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["k1", "k2", "k3"])
        for point in sample.points:
            writer.writerow([format_number(value) for value in point])

        typer.echo(buffer.getvalue(), nl=False)


@app.command("random")
def random_problem(
    n: int = typer.Argument(..., help="Number of states"),
    seed: int = typer.Option(0, help="Seed of the generator"),
    random_priors: bool = typer.Option(False, help="Draw priors from a flat Dirichlet"),
    random_values: bool = typer.Option(False, help="Draw values uniformly from [0.1, 2)"),
    output_format: OutputFormat = typer.Option(OutputFormat.json, "--format", help="Output format"),
):
    """Writes a random problem file with linearly independent states."""

    with _exit_codes():
        if n < 1:
            raise ValueError(f"Number of states must be positive, got {n}.")

        rng = np.random.default_rng(seed)
        ensemble = random_ensemble(n, rng, random_priors=random_priors, random_values=random_values)

        _emit(ProblemFile.from_ensemble(ensemble), output_format)


# ! Helpers
@contextmanager
def _exit_codes():
    """Maps errors to exit codes, 1 malformed input, 2 dependence, 3 dimension"""

    try:
        yield
    except LinearDependenceError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2)
    except UnsupportedDimensionError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=3)
    except (ValueError, TypeError, OSError, yaml.YAMLError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=1)


def _settings(config: Optional[str], **overrides) -> SolverSettings:
    settings = SolverSettings.from_file(config) if config else SolverSettings()
    return settings.updated(**overrides)


def _load_problem(path: str, settings: SolverSettings, normalize: bool) -> StateEnsemble:
    problem = ProblemFile.from_file(path)
    return problem.to_ensemble(settings.normalization_tolerance, normalize=normalize)


def _optimal_povm(ensemble: StateEnsemble, settings: SolverSettings):
    solution = optimize(ensemble, settings)
    duals = dual_vectors(ensemble, settings.independence_tolerance)
    return build_povm(duals, solution.k)


def _empty_report(ensemble: StateEnsemble) -> PosteriorReport:
    n = ensemble.n
    return PosteriorReport(
        outcomes=[],
        joint_probabilities=np.zeros((0, n)),
        posteriors=np.zeros((n, 0)),
        outcome_entropies=np.zeros(0),
        initial_entropy=float(entropy(ensemble.priors)),
        inconclusive_probability=0.0,
    )


def _in_bits(report: PosteriorReport) -> PosteriorReport:
    fields = ("outcome_entropies", "initial_entropy", "merged_entropy", "average_entropy")
    update = {
        name: to_bits(getattr(report, name))
        for name in fields
        if getattr(report, name) is not None
    }
    return report.copy(update=update)


def _emit(model, output_format: OutputFormat, hdf5: Optional[str] = None, exclude=None):
    if output_format == OutputFormat.yaml:
        typer.echo(model.yaml(exclude=exclude), nl=False)
    else:
        typer.echo(model.json(exclude=exclude))

    if hdf5:
        model.hdf5(hdf5)


if __name__ == "__main__":
    app()
