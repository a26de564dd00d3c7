import numpy as np

from joblib import Parallel, delayed
from typing import List, Optional, Tuple

from pyUSD.core import DualSystem, GainWeights, Solution, SolverSettings, StateEnsemble
from pyUSD.linalg import dual_vectors
from pyUSD.optimization.optimizer import make_solution
from pyUSD.optimization.surface import max_feasible_batch

CHUNK_SIZE = 65536


def grid_oracle(
    ensemble: StateEnsemble,
    resolution: Optional[int] = None,
    settings: Optional[SolverSettings] = None,
    refinement: Optional[int] = None,
) -> Solution:
    """Brute-force maximizer of the gain, used to check `optimize`.

    The first N-1 coefficients run over a regular grid of the intercept box
    [0, 1/|v_j|²]. The last one is not sampled but pushed to the boundary of
    the positivity domain, which is where the gain is largest for the fixed
    others. A second pass scans a finer grid spanning one coarse step around
    the best point.

    Since the feasible region is closed under lowering coefficients, the
    result is short of the true optimum by at most T Σ_{j<N} b_j Δ_j, with
    Δ_j the coarse step. This bound is reported as `resolution_bound`.

    Args:
        ensemble (StateEnsemble): Signals with priors and values.
        resolution (int, optional): Points per axis. Defaults to settings.oracle_resolution.
        settings (SolverSettings, optional): Tolerances and n_jobs.
        refinement (int, optional): Points per coarse step in the second pass.
            Defaults to settings.oracle_refinement.
    """

    settings = settings or SolverSettings()
    resolution = resolution or settings.oracle_resolution
    refinement = refinement or settings.oracle_refinement

    if resolution < 2:
        raise ValueError(f"Oracle resolution must be at least 2, got {resolution}.")

    duals = dual_vectors(ensemble, settings.independence_tolerance)
    b = GainWeights.from_ensemble(ensemble).b
    n = ensemble.n

    intercepts = duals.intercepts[: n - 1]
    steps = intercepts / (resolution - 1)

    axes = [np.linspace(0.0, upper, resolution) for upper in intercepts]
    best = _scan(duals, b, axes, settings)

    # Local pass over ±1 coarse step
    axes = [
        np.linspace(
            max(0.0, centre - step), min(upper, centre + step), 2 * refinement + 1
        )
        for centre, step, upper in zip(best[: n - 1], steps, intercepts)
    ]
    refined = _scan(duals, b, axes, settings)

    if np.dot(b, refined) > np.dot(b, best):
        best = refined

    bound = duals.gram_volume * float(np.dot(b[: n - 1], steps))

    return make_solution(
        ensemble, duals, best, settings, method="oracle", resolution_bound=bound
    )


def _scan(
    duals: DualSystem, b: np.ndarray, axes: List[np.ndarray], settings: SolverSettings
) -> np.ndarray:
    """Best point of the product grid spanned by `axes`, last coordinate on the boundary"""

    shape = tuple(axis.size for axis in axes)
    total = int(np.prod(shape))

    results = Parallel(n_jobs=settings.n_jobs)(
        delayed(_scan_chunk)(duals, b, axes, shape, start, min(start + CHUNK_SIZE, total), settings)
        for start in range(0, total, CHUNK_SIZE)
    )

    # Max by gain, the earlier chunk wins ties
    best_gain, best_point = -np.inf, None
    for gain, point in results:
        if point is not None and gain > best_gain:
            best_gain, best_point = gain, point

    return best_point


def _scan_chunk(
    duals: DualSystem,
    b: np.ndarray,
    axes: List[np.ndarray],
    shape: Tuple[int, ...],
    start: int,
    stop: int,
    settings: SolverSettings,
) -> Tuple[float, Optional[np.ndarray]]:
    n = duals.n
    indices = np.unravel_index(np.arange(start, stop), shape) if shape else ()

    points = np.zeros((stop - start, n))
    for axis, (values, index) in enumerate(zip(axes, indices)):
        points[:, axis] = values[index]

    points[:, n - 1] = max_feasible_batch(duals, points, n - 1, settings.psd_tolerance)

    gains = np.where(np.isnan(points[:, n - 1]), -np.inf, points @ b)
    best = int(np.argmax(gains))

    if not np.isfinite(gains[best]):
        return -np.inf, None

    return float(gains[best]), points[best]
