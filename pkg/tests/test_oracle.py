import numpy as np
import pytest

from pyUSD.base.errors import UnsupportedDimensionError
from pyUSD.core import StateEnsemble
from pyUSD.linalg import dual_vectors, random_ensemble
from pyUSD.measurement import det_inconclusive, inconclusive_matrix, min_eigenvalue_witness
from pyUSD.optimization import (
    grid_oracle,
    max_feasible_along,
    optimize,
    section_asymptote,
    section_k2,
    surface_sample,
)


# ! Grid oracle
def test_oracle_orthonormal(orthonormal):
    solution = grid_oracle(orthonormal, resolution=50)

    assert solution.method == "oracle"
    assert solution.gain == pytest.approx(1.0, abs=0.03)


def test_oracle_triad(triad):
    solution = grid_oracle(triad, resolution=200)

    assert solution.inconclusive_probability == pytest.approx(0.8386, abs=1e-3)
    assert solution.min_eigenvalue >= -1e-9


def test_oracle_weighted_dominance(weighted):
    assert optimize(weighted).gain >= grid_oracle(weighted, resolution=200).gain - 1e-4


def test_oracle_dominance(rng):
    for _ in range(100):
        ensemble = random_ensemble(3, rng, random_priors=True, random_values=True)

        solution = optimize(ensemble)
        reference = grid_oracle(ensemble, resolution=200)

        assert solution.gain >= reference.gain - 1e-4
        assert solution.gain <= reference.gain + reference.resolution_bound + 1e-12


def test_oracle_four_states(rng):
    ensemble = random_ensemble(4, rng, random_priors=True)

    solution = optimize(ensemble)
    reference = grid_oracle(ensemble, resolution=60)

    assert solution.gain >= reference.gain - 1e-4
    assert solution.min_eigenvalue >= -1e-9


def test_oracle_single_state():
    ensemble = StateEnsemble.from_matrix([[1.0]])
    assert grid_oracle(ensemble, resolution=10).gain == pytest.approx(1.0)


def test_oracle_rejects_coarse_grid(triad):
    with pytest.raises(ValueError, match="at least 2"):
        grid_oracle(triad, resolution=1)


# ! Boundary search
def test_max_feasible_along_axis(triad_duals):
    assert max_feasible_along(triad_duals, np.zeros(3), 0) == pytest.approx(1 / 0.35)
    assert max_feasible_along(triad_duals, np.zeros(3), 2) == pytest.approx(1 / 0.64)


def test_max_feasible_along_edge(triad_duals):
    # k1 at its intercept leaves no room for v3
    assert max_feasible_along(triad_duals, [1 / 0.35, 0.0, 0.0], 2) == 0.0


def test_max_feasible_along_infeasible_start(triad_duals):
    assert max_feasible_along(triad_duals, [3.0, 0.0, 0.0], 2) is None


def test_max_feasible_along_optimum(triad_duals, triad_optimum):
    assert max_feasible_along(triad_duals, triad_optimum, 2) == pytest.approx(
        triad_optimum[2], abs=1e-9
    )


# ! Surface
def test_surface_triad(triad_duals):
    points = surface_sample(triad_duals).points

    assert points.shape[1] == 3
    assert np.all(points >= 0.0)
    assert np.any(np.all(np.abs(points - [0.0, 0.0, 1.5625]) < 1e-9, axis=1))
    assert np.any(np.all(np.abs(points - [1 / 0.35, 0.0, 0.0]) < 1e-6, axis=1))
    assert not np.any(np.all(points == 0.0, axis=1))

    for point in points:
        assert abs(det_inconclusive(triad_duals, point)) < 1e-8


def test_surface_subspace(subspace):
    points = surface_sample(dual_vectors(subspace)).points
    assert np.any(np.all(np.abs(points - [1.5625, 0.625, 0.625]) < 1e-6, axis=1))


def test_surface_orthonormal(orthonormal):
    points = surface_sample(dual_vectors(orthonormal), resolution=11).points

    assert points.shape == (121, 3)
    np.testing.assert_allclose(points[:, 2], 1.0)


def test_surface_needs_three_states(rng):
    duals = dual_vectors(random_ensemble(4, rng))
    with pytest.raises(UnsupportedDimensionError):
        surface_sample(duals)


def test_section_approaches_asymptote(triad_duals):
    asymptote = section_asymptote(triad_duals, 0.5)

    assert asymptote == pytest.approx(0.27 / 0.1472)
    assert section_k2(triad_duals, 100.0, 0.5) == pytest.approx(1.873, abs=1e-3)

    gaps = [abs(section_k2(triad_duals, k1, 0.5) - asymptote) for k1 in (10.0, 100.0, 1000.0)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 5e-3


def test_section_on_surface(triad_duals):
    k2 = section_k2(triad_duals, 1.0, 0.5)
    assert det_inconclusive(triad_duals, [1.0, k2, 0.5]) == pytest.approx(0.0, abs=1e-12)


def test_surface_convexity(rng):
    for _ in range(5):
        duals = dual_vectors(random_ensemble(3, rng))
        points = surface_sample(duals, resolution=21).points

        for _ in range(200):
            first, second = rng.integers(0, len(points), size=2)
            midpoint = 0.5 * (points[first] + points[second])

            witness = min_eigenvalue_witness(inconclusive_matrix(duals, midpoint), 1e-9)
            assert witness.feasible
