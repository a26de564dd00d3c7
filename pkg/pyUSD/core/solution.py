from pydantic import Field
from typing import List, Optional

from pyUSD.base import DataModel
from .coefficientvector import CoefficientVector


class Solution(DataModel):

    """Maximizer of the expected gain over the positivity domain of A_0."""

    k: CoefficientVector = Field(
        ...,
        description="Optimal POVM weights.",
    )

    gain: float = Field(
        ...,
        description="Expected gain G = T Σ C_j p_j k_j.",
    )

    inconclusive_probability: float = Field(
        ...,
        description="Probability P_0 of the inconclusive answer.",
    )

    active_face: List[int] = Field(
        description="Indices of the coefficients clamped to zero.",
        default_factory=list,
    )

    boundary_contact: bool = Field(
        ...,
        description="Whether the optimum lies on the surface det(A_0) = 0.",
    )

    min_eigenvalue: float = Field(
        ...,
        description="Smallest eigenvalue of A_0 at the optimum.",
    )

    method: str = Field(
        "tangency",
        description="How the solution was obtained, 'tangency' or 'oracle'.",
    )

    resolution_bound: Optional[float] = Field(
        description="Gain error bound of a grid search due to its resolution.",
        default=None,
    )
