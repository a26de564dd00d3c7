import numpy as np
import pytest

from pyUSD.core import StateEnsemble
from pyUSD.linalg import dual_vectors, random_ensemble
from pyUSD.measurement import build_povm, outcome_probabilities
from pyUSD.optimization import optimize
from pyUSD.posterior import (
    decompose_inconclusive,
    information_gain,
    merged_posterior,
    posterior_report,
)
from pyUSD.tools.utils import to_bits


def optimal_povm(ensemble):
    return build_povm(dual_vectors(ensemble), optimize(ensemble).k)


def test_decompose_orthonormal(orthonormal):
    assert decompose_inconclusive(optimal_povm(orthonormal)) == []


def test_decompose_subspace(subspace):
    outcomes = decompose_inconclusive(optimal_povm(subspace))

    assert len(outcomes) == 1
    assert outcomes[0].label == "0:1"
    assert outcomes[0].eigenvalue == pytest.approx(0.75, abs=1e-9)
    np.testing.assert_allclose(
        outcomes[0].eigenvector, np.array([0.0, 2.0, 1.0]) / np.sqrt(5.0), atol=1e-9
    )


def test_decompose_triad_is_rank_two(triad):
    povm = optimal_povm(triad)
    outcomes = decompose_inconclusive(povm)

    assert len(outcomes) == 2
    assert outcomes[0].eigenvalue >= outcomes[1].eigenvalue

    reconstructed = sum(outcome.operator for outcome in outcomes)
    np.testing.assert_allclose(reconstructed, povm.inconclusive.matrix, atol=1e-9)

    overlap = np.vdot(outcomes[0].eigenvector, outcomes[1].eigenvector)
    assert abs(overlap) < 1e-10


def test_posterior_subspace(subspace):
    report = posterior_report(subspace, optimal_povm(subspace))

    np.testing.assert_allclose(report.posteriors[:, 0], [0.0, 0.5, 0.5], atol=1e-9)
    assert report.outcome_entropies[0] == pytest.approx(np.log(2.0), abs=1e-9)
    assert report.inconclusive_probability == pytest.approx(0.4, abs=1e-9)
    assert report.initial_entropy == pytest.approx(np.log(3.0), abs=1e-12)
    np.testing.assert_allclose(report.merged_posterior, [0.0, 0.5, 0.5], atol=1e-9)


def test_posterior_triad(triad):
    povm = optimal_povm(triad)
    report = posterior_report(triad, povm)
    p0 = outcome_probabilities(triad, dual_vectors(triad), povm.coefficients).inconclusive

    assert len(report.outcomes) == 2
    assert report.initial_entropy == pytest.approx(1.0986, abs=1e-4)
    assert report.joint_probabilities.sum() == pytest.approx(p0, abs=1e-9)
    np.testing.assert_allclose(report.posteriors.sum(axis=0), 1.0, atol=1e-10)
    assert np.all(report.outcome_entropies >= 0.0)


def test_merged_posterior_matches_report(triad):
    povm = optimal_povm(triad)
    report = posterior_report(triad, povm)

    np.testing.assert_allclose(merged_posterior(triad, povm), report.merged_posterior, atol=1e-9)
    assert report.merged_entropy <= np.log(3.0) + 1e-12


def test_merged_posterior_needs_inconclusive_outcome(orthonormal):
    with pytest.raises(ValueError, match="never occurs"):
        merged_posterior(orthonormal, optimal_povm(orthonormal))


def test_posterior_report_without_outcomes(orthonormal):
    with pytest.raises(ValueError, match="no outcome"):
        posterior_report(orthonormal, optimal_povm(orthonormal))


def test_always_detected_signal_is_excluded(subspace):
    povm = optimal_povm(subspace)
    report = posterior_report(subspace, povm)

    # u_1 is always identified, it cannot cause an inconclusive result
    assert povm.inconclusive.born(subspace.matrix[0]) < 1e-12
    assert np.all(report.posteriors[0] < 1e-10)


def test_information_gain(subspace):
    report = posterior_report(subspace, optimal_povm(subspace))

    assert information_gain(report) == pytest.approx(np.log(3.0) - np.log(2.0), abs=1e-9)
    assert to_bits(information_gain(report)) == pytest.approx(np.log2(1.5), abs=1e-9)


def test_posterior_properties(rng):
    for _ in range(50):
        ensemble = random_ensemble(3, rng, random_priors=True, random_values=True)
        povm = optimal_povm(ensemble)
        report = posterior_report(ensemble, povm)

        p0 = outcome_probabilities(ensemble, dual_vectors(ensemble), povm.coefficients).inconclusive
        assert report.joint_probabilities.sum() == pytest.approx(p0, abs=1e-9)
        np.testing.assert_allclose(report.posteriors.sum(axis=0), 1.0, atol=1e-10)
        assert report.initial_entropy == pytest.approx(
            -np.sum(ensemble.priors * np.log(ensemble.priors)), abs=1e-12
        )


def test_posterior_entropy_may_grow():
    # Skewed priors make the inconclusive posterior flatter than the prior
    ensemble = StateEnsemble.from_matrix(
        [[1.0, 0.0], [0.6, 0.8]], priors=[0.45, 0.55]
    )
    report = posterior_report(ensemble, optimal_povm(ensemble))

    assert report.outcome_entropies.max() > report.initial_entropy - 1e-12
