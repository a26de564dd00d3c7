import numpy as np

from typing import Optional

from pyUSD.base.errors import UnsupportedDimensionError
from pyUSD.core import DualSystem, SurfaceSample
from pyUSD.measurement import PSD_TOLERANCE, det_inconclusive_closed_form

NULL_TOLERANCE = 1e-12


def max_feasible_batch(
    duals: DualSystem, base: np.ndarray, j: int, tol: float = PSD_TOLERANCE
) -> np.ndarray:
    """Largest k_j keeping A_0 PSD, for a stack of coefficient vectors.

    The j-th column of `base` is ignored. With A' the inconclusive operator
    of the remaining coefficients, the answer is 1/<v_j, A'^+ v_j> if v_j
    lies in the range of A', and 0 otherwise. Rows whose A' is not PSD
    within `tol` give NaN.

    Args:
        duals (DualSystem): Dual vectors.
        base (np.ndarray): M×N array of coefficient vectors.
        j (int): Coordinate to push to the boundary.
    """

    base = np.atleast_2d(np.asarray(base, dtype=float)).copy()
    base[:, j] = 0.0

    v = duals.duals
    projectors = np.einsum("ia,ib->iab", v, v.conj())
    a_rest = np.eye(duals.n) - np.einsum("mi,iab->mab", base, projectors)
    a_rest = 0.5 * (a_rest + np.conj(np.swapaxes(a_rest, -1, -2)))

    eigenvalues, vectors = np.linalg.eigh(a_rest)
    weights = np.abs(np.einsum("mab,a->mb", vectors.conj(), v[j])) ** 2

    null = eigenvalues <= NULL_TOLERANCE
    leak = np.sum(np.where(null, weights, 0.0), axis=1)
    inverse = np.sum(
        np.where(null, 0.0, weights / np.where(null, 1.0, eigenvalues)), axis=1
    )

    result = np.where(leak > NULL_TOLERANCE * duals.norms_squared[j], 0.0, 1.0 / inverse)
    return np.where(eigenvalues[:, 0] < -tol, np.nan, result)


def max_feasible_along(
    duals: DualSystem, k: np.ndarray, j: int, tol: float = PSD_TOLERANCE
) -> Optional[float]:
    """Largest k_j keeping A_0 PSD with the other coefficients of k fixed.

    Returns None if A_0 is already indefinite without the j-th detector.
    """

    value = max_feasible_batch(duals, np.asarray(k, dtype=float)[None, :], j, tol)[0]
    return None if np.isnan(value) else float(value)


def surface_sample(
    duals: DualSystem, resolution: int = 41, tol: float = PSD_TOLERANCE
) -> SurfaceSample:
    """Points of the positivity boundary det(A_0) = 0 for three signals.

    A (k1, k2) grid spans the intercept box. For every grid point where A_0
    can still be positive, k3 is pushed to the boundary, which picks the
    smallest non-negative root of det(A_0) = 0 in k3.

    Raises:
        UnsupportedDimensionError: If there are not exactly three signals.
    """

    if duals.n != 3:
        raise UnsupportedDimensionError("surface_sample", 3, duals.n)

    intercepts = duals.intercepts
    k1, k2 = np.meshgrid(
        np.linspace(0.0, intercepts[0], resolution),
        np.linspace(0.0, intercepts[1], resolution),
        indexing="ij",
    )

    base = np.column_stack([k1.ravel(), k2.ravel(), np.zeros(k1.size)])
    k3 = max_feasible_batch(duals, base, 2, tol)

    valid = ~np.isnan(k3)
    points = base[valid]
    points[:, 2] = k3[valid]

    return SurfaceSample(points=points)


def section_k2(duals: DualSystem, k1: float, k3: float) -> float:
    """Solves det(A_0) = 0 for k2 on the section through given k1 and k3.

    det(A_0) is linear in each coefficient, so the root is -α/β with
    α = det(k1, 0, k3) and β the slope in k2.
    """

    if duals.n != 3:
        raise UnsupportedDimensionError("section_k2", 3, duals.n)

    alpha = det_inconclusive_closed_form(duals, (k1, 0.0, k3))
    beta = det_inconclusive_closed_form(duals, (k1, 1.0, k3)) - alpha

    return -alpha / beta


def section_asymptote(duals: DualSystem, k3: float) -> float:
    """Asymptote of the k3 = const section for k1 -> ∞.

    Dividing det(A_0) = 0 by k1 and letting k1 grow leaves
    -|v1|² + T (k2 + k3) - T² k2 k3 = 0, solved here for k2.
    """

    if duals.n != 3:
        raise UnsupportedDimensionError("section_asymptote", 3, duals.n)

    t = duals.gram_volume
    norm = duals.norms_squared[0]

    return (norm - t * k3) / (t - t**2 * k3)
