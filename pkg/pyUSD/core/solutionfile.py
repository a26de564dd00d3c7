from pydantic import Field
from typing import List, Optional

from pyUSD.base import DataModel


class Diagnostics(DataModel):

    """Numerical side information of a solve."""

    min_eigenvalue: float = Field(
        ...,
        description="Smallest eigenvalue of A_0 at the optimum.",
    )

    determinant: float = Field(
        ...,
        description="det(A_0) at the optimum.",
    )

    oracle_gain: Optional[float] = Field(
        description="Gain found by the grid oracle.",
        default=None,
    )

    oracle_gap: Optional[float] = Field(
        description="Solver gain minus oracle gain.",
        default=None,
    )

    oracle_resolution_bound: Optional[float] = Field(
        description="Resolution error bound of the oracle gain.",
        default=None,
    )


class SolutionFile(DataModel):

    """Machine-readable result of `pyusd solve`."""

    k: List[float] = Field(
        ...,
        description="Optimal POVM weights.",
    )

    gain: float = Field(
        ...,
        description="Expected gain G.",
    )

    inconclusive_probability: float = Field(
        ...,
        description="Probability P_0 of the inconclusive answer.",
    )

    active_face: List[int] = Field(
        description="Indices of clamped coefficients (0-based).",
        default_factory=list,
    )

    detection_probabilities: List[float] = Field(
        ...,
        description="P_j = k_j T.",
    )

    dual_norms_squared: List[float] = Field(
        ...,
        description="|v_j|².",
    )

    gram_volume: float = Field(
        ...,
        description="T = |D|².",
    )

    diagnostics: Diagnostics = Field(
        ...,
        description="Numerical diagnostics.",
    )
