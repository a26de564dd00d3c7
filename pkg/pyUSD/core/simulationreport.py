from pydantic import Field
from typing import List

from pyUSD.base import DataModel


class SimulationReport(DataModel):

    """Event counts of a Monte Carlo run compared with the analytic prediction."""

    labels: List[str] = Field(
        ...,
        description="Outcome labels, detectors '1'..'N' followed by the inconclusive outcome(s).",
    )

    counts: List[List[int]] = Field(
        ...,
        description="Event counts, input signals by outcomes.",
    )

    trials: int = Field(
        ...,
        description="Number of simulated signals.",
    )

    seed: int = Field(
        ...,
        description="Seed the run was made with.",
    )

    empirical_inconclusive: float = Field(
        ...,
        description="Observed fraction of inconclusive outcomes.",
    )

    analytic_inconclusive: float = Field(
        ...,
        description="Predicted probability P_0.",
    )

    misidentifications: int = Field(
        ...,
        description="Events where detector j fired for an input i != j.",
    )

    max_deviation: float = Field(
        ...,
        description="Largest |empirical - analytic| over all cells.",
    )

    standard_error_bound: float = Field(
        ...,
        description="Three binomial standard errors of the widest cell.",
    )
