import numpy as np

from pydantic import Field, validator

from pyUSD.base import DataModel
from pyUSD.base.utils import RealArray


class CoefficientVector(DataModel):

    """Non-negative weights k_j of the detection operators A_j = k_j |v_j><v_j|."""

    k: RealArray = Field(
        ...,
        description="POVM weights, one per signal.",
    )

    @validator("k")
    def check_non_negative(cls, k):
        if k.ndim != 1:
            raise ValueError(f"Coefficients must be a vector, got shape {k.shape}.")
        if np.any(k < 0.0):
            raise ValueError(f"Coefficients must be non-negative, got {k.tolist()}.")
        return k
