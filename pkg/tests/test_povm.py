import numpy as np
import pytest

from pydantic import ValidationError

from pyUSD.base.errors import InfeasibleCoefficientsError
from pyUSD.core import CoefficientVector
from pyUSD.linalg import dual_vectors, random_ensemble
from pyUSD.measurement import (
    born_matrix,
    build_povm,
    det_inconclusive,
    det_inconclusive_closed_form,
    dual_gram,
    inconclusive_matrix,
    is_feasible,
    outcome_probabilities,
)
from pyUSD.optimization import optimize


def test_coefficients_must_be_non_negative():
    with pytest.raises(ValidationError):
        CoefficientVector(k=[1.0, -0.1, 0.0])


def test_build_povm_is_complete(triad_duals):
    povm = build_povm(triad_duals, [1.0, 0.5, 0.25])

    assert povm.n == 3
    assert povm.completeness_residual() < 1e-12
    np.testing.assert_allclose(
        povm.detectors[0].matrix,
        np.outer(triad_duals.duals[0], triad_duals.duals[0].conj()),
        atol=1e-15,
    )


def test_build_povm_accepts_indefinite_inconclusive(triad_duals):
    povm = build_povm(triad_duals, [3.0, 0.0, 0.0])
    assert not is_feasible(povm)


def test_build_povm_wrong_length(triad_duals):
    with pytest.raises(ValueError, match="Expected 3 coefficients"):
        build_povm(triad_duals, [1.0, 1.0])


def test_feasibility_examples(triad_duals, triad_optimum):
    origin = is_feasible(build_povm(triad_duals, [0.0, 0.0, 0.0]))
    assert origin.feasible
    assert origin.min_eigenvalue == pytest.approx(1.0)

    beyond = is_feasible(build_povm(triad_duals, [3.0, 0.0, 0.0]))
    assert not beyond.feasible
    assert beyond.min_eigenvalue < 0.0

    boundary = is_feasible(build_povm(triad_duals, triad_optimum))
    assert boundary.feasible
    assert abs(boundary.min_eigenvalue) < 1e-8


def test_det_closed_form_triad(triad_duals):
    assert det_inconclusive_closed_form(triad_duals, [0.0, 0.0, 0.0]) == pytest.approx(1.0)
    assert det_inconclusive_closed_form(triad_duals, [1 / 0.35, 0.0, 0.0]) == pytest.approx(
        0.0, abs=1e-12
    )


def test_det_closed_form_matches_direct(rng):
    for _ in range(1000):
        duals = dual_vectors(random_ensemble(3, rng))
        k = rng.uniform(0.0, 2.0, size=3) * duals.intercepts

        direct = det_inconclusive(duals, k)
        assert abs(det_inconclusive_closed_form(duals, k) - direct) < 1e-9 * max(1.0, abs(direct))


def test_det_closed_form_needs_three_states(rng):
    duals = dual_vectors(random_ensemble(4, rng))
    with pytest.raises(ValueError, match="three states"):
        det_inconclusive_closed_form(duals, np.zeros(4))


def test_dual_gram_diagonal(triad_duals):
    gram = dual_gram(triad_duals)
    np.testing.assert_allclose(np.real(np.diag(gram)), [0.35, 0.75, 0.64], atol=1e-12)
    assert gram[0, 1] == pytest.approx(-0.25 - 0.2j)


def test_outcome_probabilities_triad(triad, triad_duals, triad_optimum):
    outcomes = outcome_probabilities(triad, triad_duals, triad_optimum)

    np.testing.assert_allclose(outcomes.detection, 0.16 * triad_optimum, atol=1e-12)
    assert outcomes.inconclusive == pytest.approx(0.8386, abs=5e-4)
    assert outcomes.born.shape == (3, 4)


def test_outcome_probabilities_orthonormal(orthonormal):
    duals = dual_vectors(orthonormal)
    outcomes = outcome_probabilities(orthonormal, duals, [1.0, 1.0, 1.0])

    np.testing.assert_allclose(outcomes.detection, [1.0, 1.0, 1.0])
    assert outcomes.inconclusive == pytest.approx(0.0, abs=1e-15)


def test_outcome_probabilities_subspace(subspace):
    duals = dual_vectors(subspace)
    outcomes = outcome_probabilities(subspace, duals, [1.5625, 0.625, 0.625])

    np.testing.assert_allclose(outcomes.detection, [1.0, 0.4, 0.4], atol=1e-12)
    assert outcomes.inconclusive == pytest.approx(0.4, abs=1e-12)


def test_outcome_probabilities_rejects_infeasible(triad, triad_duals):
    with pytest.raises(InfeasibleCoefficientsError):
        outcome_probabilities(triad, triad_duals, [3.0, 0.0, 0.0])


def test_inconclusive_matrix_is_hermitian(triad_duals):
    a0 = inconclusive_matrix(triad_duals, [1.0, 0.3, 0.2])
    np.testing.assert_allclose(a0, a0.conj().T, atol=0.0)


def test_unambiguity_of_optimal_measurements(rng):
    for n in (3, 4):
        for _ in range(50):
            ensemble = random_ensemble(n, rng, random_priors=True)
            duals = dual_vectors(ensemble)
            povm = build_povm(duals, optimize(ensemble).k)

            born = born_matrix(ensemble, povm)
            cross = born[:, :n] - np.diag(np.diag(born[:, :n]))

            assert np.max(np.abs(cross)) < 1e-10
            assert povm.completeness_residual() < 1e-10


def test_build_povm_single_detector_diagonal(triad_duals):
    povm = build_povm(triad_duals, [1.0, 0.0, 0.0])

    np.testing.assert_allclose(
        np.diag(povm.inconclusive.matrix), [0.84, 0.91, 0.90], atol=1e-12
    )


def test_det_inconclusive_subspace_optimum(subspace):
    duals = dual_vectors(subspace)
    assert det_inconclusive(duals, [1.5625, 0.625, 0.625]) == pytest.approx(0.0, abs=1e-12)


def test_raising_a_coefficient_never_raises_min_eigenvalue(rng):
    for n in (2, 3, 4):
        for _ in range(20):
            duals = dual_vectors(random_ensemble(n, rng))
            k = rng.uniform(0.0, 1.0, size=n) * duals.intercepts / n

            before = np.linalg.eigvalsh(inconclusive_matrix(duals, k))[0]

            j = rng.integers(n)
            raised = k.copy()
            raised[j] += rng.uniform(0.0, duals.intercepts[j])
            after = np.linalg.eigvalsh(inconclusive_matrix(duals, raised))[0]

            assert after <= before + 1e-12
