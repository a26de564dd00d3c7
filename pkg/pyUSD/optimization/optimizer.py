import itertools
import logging

import numpy as np

from joblib import Parallel, delayed
from typing import List, Optional, Sequence, Tuple

from pyUSD.base.errors import InternalConsistencyError, UnsupportedDimensionError
from pyUSD.core import (
    CoefficientVector,
    DualSystem,
    GainWeights,
    Solution,
    SolverSettings,
    StateEnsemble,
)
from pyUSD.linalg import dual_vectors, inner_product, orthogonal_blocks
from pyUSD.measurement import (
    det_inconclusive,
    dual_gram,
    inconclusive_matrix,
    min_eigenvalue_witness,
)
from pyUSD.optimization.polynomial import DeterminantPolynomial

BOUNDARY_TOLERANCE = 1e-8
DUPLICATE_TOLERANCE = 1e-9

_log = logging.getLogger(__name__)


def optimize(ensemble: StateEnsemble, settings: Optional[SolverSettings] = None) -> Solution:
    """Maximizes the expected gain G = T Σ C_j p_j k_j over the positivity domain of A_0.

    The level plane Σ b_j k_j = X is lowered until it touches the surface
    det(A_0) = 0. Every face of the non-negative orthant (coefficients
    clamped to zero) is searched for such a point of tangency, together with
    the axis intercepts and the origin, and the best feasible candidate wins.

    Signals that fall into mutually orthogonal families are optimized one
    family at a time, as their detectors do not compete for the same
    subspace.

    Args:
        ensemble (StateEnsemble): Signals with priors and values.
        settings (SolverSettings, optional): Tolerances. Defaults to SolverSettings().

    Raises:
        LinearDependenceError: If the signals are linearly dependent.
        InternalConsistencyError: If no feasible candidate survives.
    """

    settings = settings or SolverSettings()
    duals = dual_vectors(ensemble, settings.independence_tolerance)
    weights = GainWeights.from_ensemble(ensemble)
    gram = dual_gram(duals)

    k = np.zeros(ensemble.n)
    for block in orthogonal_blocks(_normalized(gram)):
        k += _optimize_block(gram, weights.b, block, settings)

    return make_solution(ensemble, duals, k, settings, method="tangency")


def face_tangency(
    duals: DualSystem,
    weights: GainWeights,
    face: Sequence[int],
    settings: Optional[SolverSettings] = None,
    require_positive: bool = True,
) -> List[np.ndarray]:
    """Points on the face where the surface det(A_0) = 0 is tangent to a level plane.

    Solves grad det(A_0) ∥ b (restricted to the free coordinates) together
    with det(A_0) = 0. One or two free coordinates are solved in closed form,
    more by Newton iteration from several starts. The intercept-box corner is
    always proposed and only passes the positivity check when the free duals
    are mutually orthogonal.

    Args:
        duals (DualSystem): Dual vectors of the ensemble.
        weights (GainWeights): Gain weights b_j.
        face (Sequence[int]): Indices clamped to zero.
        settings (SolverSettings, optional): Tolerances.
        require_positive (bool): Drop candidates with a non-positive free coordinate.

    Returns:
        List[np.ndarray]: Full-length coefficient vectors on which A_0 is PSD.
    """

    settings = settings or SolverSettings()
    clamped = set(int(index) for index in face)
    free = [index for index in range(duals.n) if index not in clamped]

    return _face_candidates(
        dual_gram(duals), weights.b, free, settings, require_positive=require_positive
    )


def make_solution(
    ensemble: StateEnsemble,
    duals: DualSystem,
    k: np.ndarray,
    settings: SolverSettings,
    method: str,
    resolution_bound: Optional[float] = None,
) -> Solution:
    """Wraps a coefficient vector into a Solution after checking feasibility."""

    k = np.clip(np.asarray(k, dtype=float), 0.0, None)
    witness = min_eigenvalue_witness(inconclusive_matrix(duals, k), settings.psd_tolerance)

    if not witness:
        raise InternalConsistencyError(
            f"Optimizer produced an infeasible point (min eigenvalue {witness.min_eigenvalue!r})."
        )

    t = duals.gram_volume
    b = ensemble.values * ensemble.priors
    determinant = det_inconclusive(duals, k)

    return Solution(
        k=CoefficientVector(k=k),
        gain=t * float(np.dot(b, k)),
        inconclusive_probability=1.0 - t * float(np.dot(ensemble.priors, k)),
        active_face=[int(index) for index in np.flatnonzero(k == 0.0)],
        boundary_contact=abs(determinant) < BOUNDARY_TOLERANCE,
        min_eigenvalue=witness.min_eigenvalue,
        method=method,
        resolution_bound=resolution_bound,
    )


def two_state_bound(ensemble: StateEnsemble) -> float:
    """Smallest inconclusive probability for two signals of equal value.

    With overlap modulus c and priors p_min <= p_max, both detectors are used
    while c <= sqrt(p_min / p_max), giving P_0 = 2 sqrt(p_1 p_2) c. Otherwise
    only the likelier signal is detected and P_0 = p_min + p_max c².
    """

    if ensemble.n != 2:
        raise UnsupportedDimensionError("two_state_bound", 2, ensemble.n)

    overlap = abs(inner_product(ensemble.states[0], ensemble.states[1]))
    p_min, p_max = sorted(float(p) for p in ensemble.priors)

    if overlap <= np.sqrt(p_min / p_max):
        return 2.0 * np.sqrt(p_min * p_max) * overlap

    return p_min + p_max * overlap**2


# ! Face enumeration
def _optimize_block(
    gram: np.ndarray, b: np.ndarray, block: List[int], settings: SolverSettings
) -> np.ndarray:
    """Best coefficient vector supported on one orthogonal family"""

    # Worthless signals are never detected
    forced = [index for index in block if b[index] == 0.0]
    optional = [index for index in block if b[index] > 0.0]

    faces = []
    for size in range(len(optional) + 1):
        for extra in itertools.combinations(optional, size):
            clamped = set(forced) | set(extra)
            faces.append([index for index in block if index not in clamped])

    results = Parallel(n_jobs=settings.n_jobs)(
        delayed(_face_candidates)(gram, b, free, settings) for free in faces
    )

    candidates = [
        (len(block) - len(free), candidate)
        for free, found in zip(faces, results)
        for candidate in found
    ]

    return _select(candidates, b, settings.tie_tolerance)


def _select(
    candidates: List[Tuple[int, np.ndarray]], b: np.ndarray, tie_tolerance: float
) -> np.ndarray:
    """Largest gain, ties broken by fewer clamped indices, then smallest k."""

    best_gain = max(float(np.dot(b, k)) for _, k in candidates)
    tied = [
        (clamped, tuple(k), k)
        for clamped, k in candidates
        if float(np.dot(b, k)) >= best_gain - tie_tolerance
    ]
    tied.sort(key=lambda entry: (entry[0], entry[1]))

    return tied[0][2]


def _face_candidates(
    gram: np.ndarray,
    b: np.ndarray,
    free: List[int],
    settings: SolverSettings,
    require_positive: bool = True,
) -> List[np.ndarray]:
    n = gram.shape[0]

    if not free:
        return [np.zeros(n)]

    polynomial = DeterminantPolynomial(gram, free)
    b_free = b[free]

    # Degenerate vertex of the intercept box
    raw = [polynomial.intercepts]

    if len(free) == 2:
        raw += _two_variable_tangency(polynomial, b_free)
    elif len(free) > 2:
        raw += _newton_tangency(polynomial, b_free, settings)

    accepted = []
    for point in raw:
        if require_positive and np.any(point <= 0.0):
            continue

        k = np.zeros(n)
        k[free] = point

        witness = min_eigenvalue_witness(
            _block_inconclusive(gram, free, point), settings.psd_tolerance
        )
        if not witness:
            continue

        if any(np.max(np.abs(k - other)) < DUPLICATE_TOLERANCE for other in accepted):
            continue

        accepted.append(k)

    return accepted


def _block_inconclusive(gram: np.ndarray, free: List[int], point: np.ndarray) -> np.ndarray:
    """Matrix similar to the non-trivial part of A_0 on the free duals.

    1 - G^1/2 K G^1/2 has the spectrum of A_0 restricted to the span of the
    free duals (the rest of A_0 is the identity).
    """

    sub = gram[np.ix_(free, free)]
    eigenvalues, vectors = np.linalg.eigh(sub)
    root = (vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ vectors.conj().T

    matrix = np.eye(len(free)) - root @ np.diag(point) @ root
    return 0.5 * (matrix + matrix.conj().T)


def _two_variable_tangency(polynomial: DeterminantPolynomial, b: np.ndarray) -> List[np.ndarray]:
    """Tangency on a face with two free coordinates (x, y), in closed form.

    det = 1 - g1 x - g2 y + c x y. Parallel gradients give the line
    c (b2 y - b1 x) = b2 g1 - b1 g2, substituting it into det = 0 leaves a
    quadratic in x.
    """

    g1, g2 = np.real(np.diag(polynomial.gram))
    c = polynomial.coefficients[-1]
    b1, b2 = b

    if b1 <= 0.0 or b2 <= 0.0 or c <= 0.0:
        return []

    alpha = b1 / b2
    beta = (b2 * g1 - b1 * g2) / (c * b2)

    roots = np.roots([c * alpha, c * beta - g1 - g2 * alpha, 1.0 - g2 * beta])

    points = []
    for root in roots:
        if abs(root.imag) > 1e-12 * max(1.0, abs(root.real)):
            continue
        x = float(root.real)
        points.append(np.array([x, alpha * x + beta]))

    return points


def _newton_tangency(
    polynomial: DeterminantPolynomial, b: np.ndarray, settings: SolverSettings
) -> List[np.ndarray]:
    """Solves grad det = μ b, det = 0 by damped Newton iteration.

    Starts are the centre of the intercept box and its corners scaled by 1/2,
    each pushed radially onto the boundary of the positivity domain so that
    the iteration begins on the relevant sheet of the surface.
    """

    intercepts = polynomial.intercepts
    m = polynomial.m

    starts = []
    for corner in itertools.product([0.0, 1.0], repeat=m):
        corner = np.array(corner)
        if corner.any():
            starts.append(polynomial.radial_boundary(0.5 * corner * intercepts))

    solutions = []
    for start in starts:
        solution = _newton(polynomial, b, start, settings)
        if solution is not None:
            solutions.append(solution)

    if not solutions:
        # Expected on faces that hold no point of tangency
        _log.debug(
            "Tangency iteration did not converge on the face with free indices %s.", polynomial.free
        )

    return solutions


def _newton(
    polynomial: DeterminantPolynomial,
    b: np.ndarray,
    start: np.ndarray,
    settings: SolverSettings,
) -> Optional[np.ndarray]:
    m = polynomial.m
    k = start.copy()
    gradient = polynomial.gradient(k)
    mu = float(gradient @ b) / float(b @ b)

    def residual(k, mu):
        gradient = polynomial.gradient(k)
        return np.concatenate([gradient - mu * b, [polynomial.value(k)]]), gradient

    current, gradient = residual(k, mu)

    for _ in range(settings.newton_max_iterations):
        scale = max(1.0, np.max(np.abs(k)) * np.max(np.abs(gradient)))
        if np.max(np.abs(current)) <= settings.newton_tolerance * scale:
            return k

        jacobian = np.zeros((m + 1, m + 1))
        jacobian[:m, :m] = polynomial.hessian(k)
        jacobian[:m, m] = -b
        jacobian[m, :m] = gradient

        step = np.linalg.lstsq(jacobian, -current, rcond=None)[0]

        # Backtrack until the residual shrinks
        size = 1.0
        for _ in range(30):
            trial_k, trial_mu = k + size * step[:m], mu + size * step[m]
            trial, trial_gradient = residual(trial_k, trial_mu)
            if np.linalg.norm(trial) < np.linalg.norm(current):
                break
            size *= 0.5
        else:
            break

        k, mu, current, gradient = trial_k, trial_mu, trial, trial_gradient

    scale = max(1.0, np.max(np.abs(k)) * np.max(np.abs(gradient)))
    if np.max(np.abs(current)) <= settings.newton_tolerance * scale:
        return k

    return None


def _normalized(gram: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.real(np.diag(gram)))
    return gram / np.outer(norms, norms)
