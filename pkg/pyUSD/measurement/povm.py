import numpy as np

from typing import Union

from pyUSD.base.errors import InfeasibleCoefficientsError, InternalConsistencyError
from pyUSD.core import (
    CoefficientVector,
    DualSystem,
    FeasibilityWitness,
    OutcomeProbabilities,
    PovmElement,
    PovmSet,
    StateEnsemble,
)

PSD_TOLERANCE = 1e-9
CROSS_DETECTION_TOLERANCE = 1e-10
CONSISTENCY_TOLERANCE = 1e-8

Coefficients = Union[CoefficientVector, np.ndarray, list, tuple]


def as_coefficients(k: Coefficients, n: int) -> CoefficientVector:
    """Coerces k into a CoefficientVector of length n"""

    if not isinstance(k, CoefficientVector):
        k = CoefficientVector(k=np.asarray(k, dtype=float))

    if k.k.shape != (n,):
        raise ValueError(f"Expected {n} coefficients, got shape {k.k.shape}.")

    return k


def dual_gram(duals: DualSystem) -> np.ndarray:
    """Matrix of dual overlaps <v_i, v_j>"""
    v = duals.duals
    gram = v.conj() @ v.T
    return 0.5 * (gram + gram.conj().T)


def inconclusive_matrix(duals: DualSystem, k) -> np.ndarray:
    """A_0 = 1 - Σ k_j |v_j><v_j| as a plain array"""

    k = np.asarray(k, dtype=float)
    v = duals.duals
    weighted = (v.T * k) @ v.conj()
    a0 = np.eye(duals.n) - weighted

    return 0.5 * (a0 + a0.conj().T)


def build_povm(duals: DualSystem, k: Coefficients) -> PovmSet:
    """Builds the detectors A_j = k_j |v_j><v_j| and A_0 = 1 - Σ A_j.

    Completeness holds by construction. Positivity of A_0 is not required
    here; use `is_feasible` to test it.
    """

    k = as_coefficients(k, duals.n)

    detectors = []
    for weight, vector in zip(k.k, duals.duals):
        detectors.append(PovmElement(matrix=weight * np.outer(vector, vector.conj())))

    inconclusive = PovmElement(matrix=inconclusive_matrix(duals, k.k))

    return PovmSet(detectors=detectors, inconclusive=inconclusive, coefficients=k)


def det_inconclusive(duals: DualSystem, k: Coefficients) -> float:
    """det(A_0) evaluated directly for any N."""

    k = as_coefficients(k, duals.n)
    return float(np.real(np.linalg.det(inconclusive_matrix(duals, k.k))))


def det_inconclusive_closed_form(duals: DualSystem, k: Coefficients) -> float:
    """Three-state polynomial form of det(A_0):

    1 - Σ |v_j|² k_j + T (k1 k2 + k2 k3 + k3 k1) - T² k1 k2 k3
    """

    if duals.n != 3:
        raise ValueError(f"Closed form needs three states, got {duals.n}.")

    k1, k2, k3 = as_coefficients(k, 3).k
    t = duals.gram_volume
    norms = duals.norms_squared

    return float(
        1.0
        - np.dot(norms, (k1, k2, k3))
        + t * (k1 * k2 + k2 * k3 + k3 * k1)
        - t**2 * k1 * k2 * k3
    )


def is_feasible(povm: PovmSet, tol: float = PSD_TOLERANCE) -> FeasibilityWitness:
    """Tests A_0 for positive semi-definiteness via its smallest eigenvalue.

    The full spectrum is checked, not only det(A_0), so points on the
    irrelevant sheets of the surface det(A_0) = 0 are rejected.
    """

    return min_eigenvalue_witness(povm.inconclusive.matrix, tol)


def min_eigenvalue_witness(a0: np.ndarray, tol: float = PSD_TOLERANCE) -> FeasibilityWitness:
    min_eigenvalue = float(np.linalg.eigvalsh(a0)[0])
    return FeasibilityWitness(
        feasible=min_eigenvalue >= -tol, min_eigenvalue=min_eigenvalue, tolerance=tol
    )


def outcome_probabilities(
    ensemble: StateEnsemble,
    duals: DualSystem,
    k: Coefficients,
    tol: float = PSD_TOLERANCE,
) -> OutcomeProbabilities:
    """Detection probabilities P_j = k_j T and the inconclusive probability P_0.

    P_0 = 1 - T Σ k_j p_j. Both are cross-checked against the Born
    probabilities <u_i, A_j u_i>, which also must vanish for i != j.

    Raises:
        InfeasibleCoefficientsError: If A_0 is not PSD within `tol`.
        InternalConsistencyError: If the Born probabilities disagree.
    """

    povm = build_povm(duals, k)
    witness = is_feasible(povm, tol)

    if not witness:
        raise InfeasibleCoefficientsError(witness.min_eigenvalue, tol)

    k = povm.coefficients.k
    priors = ensemble.priors
    t = duals.gram_volume

    detection = k * t
    inconclusive = 1.0 - t * float(np.dot(k, priors))

    born = born_matrix(ensemble, povm)

    deviation = np.max(np.abs(np.diag(born[:, :-1]) - detection))
    if deviation > CONSISTENCY_TOLERANCE:
        raise InternalConsistencyError(
            f"Detection probabilities k_j T and <u_j, A_j u_j> differ by {deviation!r}."
        )

    cross = born[:, :-1] - np.diag(np.diag(born[:, :-1]))
    if np.max(np.abs(cross)) > CROSS_DETECTION_TOLERANCE:
        raise InternalConsistencyError(
            f"Detector fires for a wrong input with probability {np.max(np.abs(cross))!r}."
        )

    averaged = float(np.dot(priors, born[:, -1]))
    if abs(averaged - inconclusive) > CONSISTENCY_TOLERANCE:
        raise InternalConsistencyError(
            f"Inconclusive probability {inconclusive!r} differs from Born value {averaged!r}."
        )

    return OutcomeProbabilities(detection=detection, inconclusive=inconclusive, born=born)


def born_matrix(ensemble: StateEnsemble, povm: PovmSet) -> np.ndarray:
    """<u_i, A u_i> for every input i and every element A (A_0 in the last column)"""

    elements = [detector.matrix for detector in povm.detectors]
    elements.append(povm.inconclusive.matrix)

    states = ensemble.matrix
    return np.array(
        [[np.real(np.vdot(u, a @ u)) for a in elements] for u in states]
    )
