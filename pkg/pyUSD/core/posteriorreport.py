from pydantic import Field
from typing import List, Optional

from pyUSD.base import DataModel
from pyUSD.base.utils import RealArray
from .spectraloutcome import SpectralOutcome


class PosteriorReport(DataModel):

    """Bayesian posteriors and entropies (nats) attached to the inconclusive outcomes."""

    outcomes: List[SpectralOutcome] = Field(
        description="Spectral outcomes of A_0 that occur with non-zero probability.",
        default_factory=list,
    )

    joint_probabilities: RealArray = Field(
        ...,
        description="P_mj = p_j λ_m |<m, u_j>|², outcomes m by inputs j.",
    )

    posteriors: RealArray = Field(
        ...,
        description="Q_jm = P_mj / Σ_i P_mi, inputs j by outcomes m.",
    )

    outcome_entropies: RealArray = Field(
        ...,
        description="Shannon entropy H_m of each posterior column.",
    )

    initial_entropy: float = Field(
        ...,
        description="Entropy H_init of the priors.",
    )

    inconclusive_probability: float = Field(
        ...,
        description="Total probability of all inconclusive outcomes.",
    )

    merged_posterior: Optional[RealArray] = Field(
        description="Posterior when A_0 is read out as a single outcome.",
        default=None,
    )

    merged_entropy: Optional[float] = Field(
        description="Entropy of the merged posterior.",
        default=None,
    )

    average_entropy: Optional[float] = Field(
        description="Entropy left on average after an inconclusive outcome, Σ_m P(m|0) H_m.",
        default=None,
    )
