import numpy as np

from pydantic import Field, root_validator
from typing import List

from pyUSD.base import DataModel
from .coefficientvector import CoefficientVector
from .povmelement import PovmElement

COMPLETENESS_TOLERANCE = 1e-10


class PovmSet(DataModel):

    """Detection operators A_1..A_N and the inconclusive operator A_0."""

    detectors: List[PovmElement] = Field(
        ...,
        description="Operators A_j = k_j |v_j><v_j| identifying signal j.",
    )

    inconclusive: PovmElement = Field(
        ...,
        description="Operator A_0 = 1 - Σ A_j of the inconclusive answer.",
    )

    coefficients: CoefficientVector = Field(
        ...,
        description="Weights the detectors were built from.",
    )

    @root_validator(skip_on_failure=True)
    def check_completeness(cls, fields):
        total = fields["inconclusive"].matrix.copy()
        for detector in fields["detectors"]:
            total = total + detector.matrix

        residual = np.max(np.abs(total - np.eye(total.shape[0])))
        if residual > COMPLETENESS_TOLERANCE:
            raise ValueError(f"POVM elements do not sum to the identity (residual {residual!r}).")

        return fields

    @property
    def n(self) -> int:
        return len(self.detectors)

    def completeness_residual(self) -> float:
        total = sum(detector.matrix for detector in self.detectors) + self.inconclusive.matrix
        return float(np.max(np.abs(total - np.eye(self.n))))
