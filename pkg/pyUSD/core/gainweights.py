import numpy as np

from pydantic import Field, validator

from pyUSD.base import DataModel
from pyUSD.base.utils import RealArray


class GainWeights(DataModel):

    """Weights b_j = C_j p_j of the expected gain G = T Σ b_j k_j."""

    b: RealArray = Field(
        ...,
        description="Value times prior of each signal.",
    )

    @validator("b")
    def check_weights(cls, b):
        if np.any(b < 0.0):
            raise ValueError(f"Gain weights must be non-negative, got {b.tolist()}.")
        if not np.any(b > 0.0):
            raise ValueError("At least one gain weight must be positive.")
        return b

    @classmethod
    def from_ensemble(cls, ensemble) -> "GainWeights":
        return cls(b=np.asarray(ensemble.values) * np.asarray(ensemble.priors))
