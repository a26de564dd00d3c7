import warnings

import numpy as np

from scipy.stats import entropy
from typing import List, Optional

from pyUSD.core import PosteriorReport, PovmSet, SpectralOutcome, StateEnsemble

SPECTRAL_CUTOFF = 1e-10
ZERO_OPERATOR_TOLERANCE = 1e-12
ZERO_PROBABILITY_TOLERANCE = 1e-15


def decompose_inconclusive(
    povm: PovmSet, cutoff: Optional[float] = None
) -> List[SpectralOutcome]:
    """Splits A_0 into rank-1 parts λ_m |m><m|.

    Each part is itself a valid POVM element, so the inconclusive answer can
    be refined into one outcome per eigenvector. Eigenvalues below
    `cutoff` times the largest one are dropped, which removes the zero
    eigenvalue of a boundary optimum. A numerically vanishing A_0 has no
    outcomes at all.

    Args:
        povm (PovmSet): Measurement whose A_0 is decomposed.
        cutoff (float, optional): Relative eigenvalue cutoff. Defaults to 1e-10.

    Returns:
        List[SpectralOutcome]: Outcomes labelled '0:1', '0:2', ... by decreasing eigenvalue.
    """

    cutoff = SPECTRAL_CUTOFF if cutoff is None else cutoff
    eigenvalues, vectors = np.linalg.eigh(povm.inconclusive.matrix)

    largest = eigenvalues[-1]
    if largest <= ZERO_OPERATOR_TOLERANCE:
        return []

    outcomes = []
    for position in np.argsort(eigenvalues)[::-1]:
        eigenvalue = eigenvalues[position]

        if eigenvalue <= cutoff * largest:
            break

        outcomes.append(
            SpectralOutcome(
                eigenvalue=float(min(eigenvalue, 1.0)),
                eigenvector=_fix_phase(vectors[:, position]),
                label=f"0:{len(outcomes) + 1}",
            )
        )

    return outcomes


def posterior_report(
    ensemble: StateEnsemble, povm: PovmSet, cutoff: Optional[float] = None
) -> PosteriorReport:
    """Posterior distribution of the input after each inconclusive outcome.

    For outcome m the joint probability with input j is
    P_mj = p_j λ_m |<m, u_j>|² and Bayes gives Q_jm = P_mj / Σ_i P_mi.
    Entropies are Shannon entropies in nats with 0 ln 0 = 0. The report also
    carries the posterior of A_0 read out as a single outcome.

    Raises:
        ValueError: If A_0 has no outcome with non-zero probability.
    """

    outcomes = decompose_inconclusive(povm, cutoff)

    joint = _joint_probabilities(ensemble, outcomes)
    occurring = joint.sum(axis=1) > ZERO_PROBABILITY_TOLERANCE

    for outcome, kept in zip(outcomes, occurring):
        if not kept:
            warnings.warn(
                f"Inconclusive outcome '{outcome.label}' never occurs and is dropped."
            )

    outcomes = [outcome for outcome, kept in zip(outcomes, occurring) if kept]
    joint = joint[occurring]

    if not outcomes:
        raise ValueError("Inconclusive operator has no outcome with non-zero probability.")

    posteriors = (joint / joint.sum(axis=1, keepdims=True)).T
    entropies = entropy(posteriors, axis=0)

    total = float(joint.sum())
    weights = joint.sum(axis=1) / total
    merged = joint.sum(axis=0) / total

    return PosteriorReport(
        outcomes=outcomes,
        joint_probabilities=joint,
        posteriors=posteriors,
        outcome_entropies=entropies,
        initial_entropy=float(entropy(ensemble.priors)),
        inconclusive_probability=total,
        merged_posterior=merged,
        merged_entropy=float(entropy(merged)),
        average_entropy=float(np.dot(weights, entropies)),
    )


def merged_posterior(ensemble: StateEnsemble, povm: PovmSet) -> np.ndarray:
    """Posterior of the inputs when A_0 is read out as one outcome.

    Raises:
        ValueError: If the inconclusive outcome never occurs.
    """

    states = ensemble.matrix
    a0 = povm.inconclusive.matrix
    joint = ensemble.priors * np.real(np.einsum("ja,ab,jb->j", states.conj(), a0, states))
    joint = np.clip(joint, 0.0, None)

    if joint.sum() <= ZERO_PROBABILITY_TOLERANCE:
        raise ValueError("Inconclusive outcome never occurs, its posterior is undefined.")

    return joint / joint.sum()


def information_gain(report: PosteriorReport) -> float:
    """Average entropy reduction H_init - Σ_m P(m|0) H_m in nats.

    Negative values are legitimate, an inconclusive outcome may leave the
    observer less certain than before.
    """

    average = report.average_entropy
    if average is None:
        weights = report.joint_probabilities.sum(axis=1) / report.inconclusive_probability
        average = float(np.dot(weights, report.outcome_entropies))

    return report.initial_entropy - average


def _joint_probabilities(
    ensemble: StateEnsemble, outcomes: List[SpectralOutcome]
) -> np.ndarray:
    if not outcomes:
        return np.zeros((0, ensemble.n))

    vectors = np.array([outcome.eigenvector for outcome in outcomes])
    eigenvalues = np.array([outcome.eigenvalue for outcome in outcomes])
    overlaps = np.abs(vectors.conj() @ ensemble.matrix.T) ** 2

    return eigenvalues[:, None] * overlaps * ensemble.priors[None, :]


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    # Largest component real and positive
    pivot = vector[np.argmax(np.abs(vector))]
    return vector * (abs(pivot) / pivot)
