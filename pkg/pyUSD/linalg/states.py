import warnings

import numpy as np
import scipy.linalg

from scipy.sparse.csgraph import connected_components
from typing import List, Optional, Tuple

from pyUSD.base.errors import LinearDependenceError
from pyUSD.core import (
    CanonicalForm,
    CanonicalParameters,
    DualSystem,
    GramData,
    StateEnsemble,
    StateVector,
)

INDEPENDENCE_TOLERANCE = 1e-12
ORTHOGONALITY_TOLERANCE = 1e-12


def inner_product(a, b) -> complex:
    """Inner product <a, b> = Σ conj(a_i) b_i, conjugating the first argument.

    Args:
        a (StateVector | array-like): Bra vector.
        b (StateVector | array-like): Ket vector.
    """

    a, b = _components(a), _components(b)

    if a.shape != b.shape:
        raise ValueError(
            f"Dimension mismatch in inner product: {a.shape} vs {b.shape}."
        )

    return complex(np.vdot(a, b))


def gram_data(ensemble: StateEnsemble) -> GramData:
    """Overlap matrix, determinant and Gram volume T = |D|² of the signal states.

    The determinant is taken from an LU decomposition with partial pivoting
    of the matrix whose rows are the state components.
    """

    matrix = ensemble.matrix
    overlaps = matrix.conj() @ matrix.T
    overlaps = 0.5 * (overlaps + overlaps.conj().T)

    lu, piv = _lu_factor(matrix)
    determinant = _lu_determinant(lu, piv)

    return GramData(
        overlaps=overlaps,
        determinant=determinant,
        gram_volume=abs(determinant) ** 2,
    )


def gram_volume_closed_form(gram: GramData) -> float:
    """Three-state Gram volume from the pairwise overlaps alone.

    T = 1 + s12 s23 s31 + s13 s32 s21 - |s12|² - |s23|² - |s31|²
    """

    s = gram.overlaps
    if s.shape != (3, 3):
        raise ValueError(f"Closed form needs three states, got {s.shape[0]}.")

    value = (
        1.0
        + s[0, 1] * s[1, 2] * s[2, 0]
        + s[0, 2] * s[2, 1] * s[1, 0]
        - abs(s[0, 1]) ** 2
        - abs(s[1, 2]) ** 2
        - abs(s[2, 0]) ** 2
    )

    return float(np.real(value))


def dual_vectors(
    ensemble: StateEnsemble, tolerance: float = INDEPENDENCE_TOLERANCE
) -> DualSystem:
    """Builds the dual vectors v_j with <u_i, v_j> = δ_ij D.

    v_j is the j-th column of D·conj(U)^-1 (U has the states as rows). Up to a
    phase these are the conjugated cofactors of row j of U, which for three
    states reduce to conjugated cross products of the other two signals.

    Raises:
        LinearDependenceError: If T is below `tolerance`.
    """

    matrix = ensemble.matrix
    lu, piv = _lu_factor(matrix)
    determinant = _lu_determinant(lu, piv)
    gram_volume = abs(determinant) ** 2

    if gram_volume < tolerance:
        raise LinearDependenceError(gram_volume, tolerance)

    # conj(U) = P conj(L) conj(U'), so its LU is the conjugate of ours
    inverse = scipy.linalg.lu_solve((lu.conj(), piv), np.eye(ensemble.n, dtype=complex))
    duals = (determinant * inverse).T

    overlaps = matrix.conj() @ matrix.T
    gram = GramData(
        overlaps=0.5 * (overlaps + overlaps.conj().T),
        determinant=determinant,
        gram_volume=gram_volume,
    )

    return DualSystem(duals=duals, gram=gram)


def biorthogonality_residual(ensemble: StateEnsemble, duals: DualSystem) -> float:
    """max_ij |<u_i, v_j> - δ_ij D|"""

    products = ensemble.matrix.conj() @ duals.duals.T
    target = duals.gram.determinant * np.eye(ensemble.n)
    return float(np.max(np.abs(products - target)))


def canonical_reduce(
    ensemble: StateEnsemble, tolerance: float = INDEPENDENCE_TOLERANCE
) -> CanonicalForm:
    """Expresses the states in a basis where their components are lower-triangular.

    The basis is built Gram-Schmidt style from u_1, u_2, ... with phases chosen
    so that every diagonal component is positive real. The reduced components
    follow from the Cholesky factor of the overlap matrix, so all overlaps are
    preserved. For three states the named parameters a2, b2, a3, b3, β, c3 are
    read off after rephasing u_2 and u_3 so that their overlaps with u_1 are
    real and non-negative.

    Raises:
        LinearDependenceError: If T is below `tolerance`.
    """

    gram = gram_data(ensemble)

    if gram.gram_volume < tolerance:
        raise LinearDependenceError(gram.gram_volume, tolerance)

    reduced = _cholesky_components(gram.overlaps)

    parameters = None
    if ensemble.n == 3:
        parameters = _three_state_parameters(gram.overlaps)

    return CanonicalForm(reduced_states=reduced, parameters=parameters)


def orthogonal_blocks(
    overlaps: np.ndarray, tolerance: float = ORTHOGONALITY_TOLERANCE
) -> List[List[int]]:
    """Groups signals into mutually orthogonal families.

    Two signals share a group when they are connected by a chain of
    non-vanishing overlaps. Signals of different groups span orthogonal
    subspaces, and so do their duals.
    """

    adjacency = (np.abs(overlaps) > tolerance).astype(int)
    _, labels = connected_components(adjacency, directed=False)

    groups = {}
    for index, label in enumerate(labels):
        groups.setdefault(label, []).append(index)

    return sorted(groups.values(), key=lambda group: group[0])


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Gaussian matrix"""

    gaussian = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(gaussian)
    phases = np.diag(r) / np.abs(np.diag(r))

    return q * phases


def random_ensemble(
    n: int,
    rng: np.random.Generator,
    random_priors: bool = False,
    random_values: bool = False,
    tolerance: float = 1e-6,
) -> StateEnsemble:
    """Random normalized complex states with optional random priors and values.

    Draws are repeated until the states are comfortably independent
    (T > tolerance).
    """

    while True:
        matrix = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        matrix /= np.linalg.norm(matrix, axis=1)[:, None]

        if abs(np.linalg.det(matrix)) ** 2 > tolerance:
            break

    priors = rng.dirichlet(np.ones(n)) if random_priors else None
    values = rng.uniform(0.1, 2.0, size=n) if random_values else None

    if priors is not None:
        # Guard against round-off in the sum
        priors = priors / priors.sum()

    return StateEnsemble.from_matrix(matrix, priors=priors, values=values)


def transform(ensemble: StateEnsemble, unitary: np.ndarray) -> StateEnsemble:
    """Applies a common unitary to all states"""
    return ensemble.with_states(ensemble.matrix @ unitary.T)


# ! Helpers
def _components(vector) -> np.ndarray:
    if isinstance(vector, StateVector):
        return vector.components

    return np.asarray(vector, dtype=complex)


def _lu_factor(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    with warnings.catch_warnings():
        # Singular matrices are reported through T, not through scipy
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        return scipy.linalg.lu_factor(matrix.astype(complex))


def _lu_determinant(lu: np.ndarray, piv: np.ndarray) -> complex:
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    sign = -1.0 if swaps % 2 else 1.0
    return complex(sign * np.prod(np.diag(lu)))


def _cholesky_components(overlaps: np.ndarray) -> np.ndarray:
    # <u_i, u_j> = (conj(R) R^T)_ij, hence conj(R) is the Cholesky factor
    lower = np.linalg.cholesky(overlaps)
    return lower.conj()


def _three_state_parameters(overlaps: np.ndarray) -> CanonicalParameters:
    phases = np.ones(3, dtype=complex)
    for j in (1, 2):
        if abs(overlaps[0, j]) > ORTHOGONALITY_TOLERANCE:
            phases[j] = overlaps[0, j] / abs(overlaps[0, j])

    # u_j -> conj(phase_j) u_j makes <u_1, u_j> real and non-negative
    rephased = np.outer(phases, phases.conj()) * overlaps
    reduced = _cholesky_components(rephased)

    return CanonicalParameters(
        a2=float(reduced[1, 0].real),
        b2=float(reduced[1, 1].real),
        a3=float(reduced[2, 0].real),
        b3=float(abs(reduced[2, 1])),
        beta=float(np.angle(reduced[2, 1])) if abs(reduced[2, 1]) > 0.0 else 0.0,
        c3=float(reduced[2, 2].real),
    )
