import warnings

import numpy as np

from joblib import Parallel, delayed
from typing import List, Tuple

from pyUSD.base.errors import InfeasibleCoefficientsError, InternalConsistencyError
from pyUSD.core import PovmSet, SimulationConfig, SimulationReport, StateEnsemble
from pyUSD.measurement import PSD_TOLERANCE, born_matrix, is_feasible
from pyUSD.posterior import decompose_inconclusive

CLIP_TOLERANCE = 1e-9
NORMALIZATION_TOLERANCE = 1e-9


def run_simulation(
    ensemble: StateEnsemble, povm: PovmSet, config: SimulationConfig
) -> SimulationReport:
    """Monte Carlo experiment with the given measurement.

    Every trial draws an input j from the priors and then an outcome with
    the Born probabilities <u_j, A u_j>. Trials are cut into chunks of
    `config.chunk_size`, chunk c drawing from a Philox stream keyed by
    (seed, c). Counts are therefore identical for any `n_jobs`.

    Args:
        ensemble (StateEnsemble): Signals and priors.
        povm (PovmSet): Measurement, must be feasible.
        config (SimulationConfig): Trials, seed and readout options.

    Raises:
        InfeasibleCoefficientsError: If A_0 is not PSD.
    """

    witness = is_feasible(povm, PSD_TOLERANCE)
    if not witness:
        raise InfeasibleCoefficientsError(witness.min_eigenvalue, PSD_TOLERANCE)

    labels, probabilities = outcome_table(ensemble, povm, config.split_inconclusive)
    cumulative = np.cumsum(probabilities, axis=1)
    cumulative /= cumulative[:, -1:]

    chunks = [
        (index, min(config.chunk_size, config.trials - start))
        for index, start in enumerate(range(0, config.trials, config.chunk_size))
    ]

    results = Parallel(n_jobs=config.n_jobs)(
        delayed(_simulate_chunk)(
            ensemble.priors, cumulative, config.seed, index, size
        )
        for index, size in chunks
    )

    counts = np.sum(results, axis=0)

    n = ensemble.n
    joint = ensemble.priors[:, None] * probabilities
    frequencies = counts / config.trials

    misidentified = counts[:, :n] - np.diag(np.diag(counts[:, :n]))

    return SimulationReport(
        labels=labels,
        counts=counts.tolist(),
        trials=config.trials,
        seed=config.seed,
        empirical_inconclusive=float(frequencies[:, n:].sum()),
        analytic_inconclusive=float(joint[:, n:].sum()),
        misidentifications=int(misidentified.sum()),
        max_deviation=float(np.max(np.abs(frequencies - joint))),
        standard_error_bound=float(3.0 * np.max(np.sqrt(joint * (1.0 - joint) / config.trials))),
    )


def outcome_table(
    ensemble: StateEnsemble, povm: PovmSet, split_inconclusive: bool = False
) -> Tuple[List[str], np.ndarray]:
    """Outcome labels and the input-by-outcome Born probability matrix.

    Detectors are labelled '1'..'N', the inconclusive answer '0' or, when
    split, '0:1', '0:2', ... per spectral outcome. Round-off negatives down
    to -1e-9 are clipped and each row renormalized.
    """

    n = ensemble.n
    born = born_matrix(ensemble, povm)
    labels = [str(j + 1) for j in range(n)]

    if split_inconclusive:
        outcomes = decompose_inconclusive(povm)
        states = ensemble.matrix
        spectral = np.array(
            [
                outcome.eigenvalue * np.abs(states @ outcome.eigenvector.conj()) ** 2
                for outcome in outcomes
            ]
        ).reshape(len(outcomes), n)

        probabilities = np.hstack([born[:, :n], spectral.T])
        labels += [outcome.label for outcome in outcomes]
    else:
        probabilities = born
        labels.append("0")

    if np.min(probabilities) < -CLIP_TOLERANCE:
        raise InternalConsistencyError(
            f"Negative outcome probability {np.min(probabilities)!r} beyond round-off."
        )

    if np.min(probabilities) < -1e-12:
        warnings.warn(
            f"Clipping negative outcome probabilities down to {np.min(probabilities)!r}."
        )

    probabilities = np.clip(probabilities, 0.0, None)
    sums = probabilities.sum(axis=1)

    deviation = np.max(np.abs(sums - 1.0))
    if deviation > NORMALIZATION_TOLERANCE:
        raise InternalConsistencyError(
            f"Outcome probabilities of an input sum to 1 only within {deviation!r}."
        )

    return labels, probabilities / sums[:, None]


def _simulate_chunk(
    priors: np.ndarray, cumulative: np.ndarray, seed: int, index: int, size: int
) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))

    n, m = cumulative.shape
    inputs = rng.choice(n, size=size, p=priors)
    draws = rng.random(size)

    outcomes = np.empty(size, dtype=int)
    for j in range(n):
        selected = inputs == j
        outcomes[selected] = np.searchsorted(cumulative[j], draws[selected], side="right")

    outcomes = np.minimum(outcomes, m - 1)

    return np.bincount(inputs * m + outcomes, minlength=n * m).reshape(n, m)
