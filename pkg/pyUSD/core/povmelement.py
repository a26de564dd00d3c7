import numpy as np

from pydantic import Field, validator

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray

HERMITIAN_TOLERANCE = 1e-12


class PovmElement(DataModel):

    """A single Hermitian measurement operator.

    Positivity is not enforced here, the inconclusive element of a trial
    coefficient vector may be indefinite. Use `is_feasible` for that.
    """

    matrix: ComplexArray = Field(
        ...,
        description="N×N Hermitian matrix.",
    )

    @validator("matrix")
    def check_hermitian(cls, matrix):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"POVM element must be square, got shape {matrix.shape}.")

        deviation = np.max(np.abs(matrix - matrix.conj().T), initial=0.0)
        if deviation > HERMITIAN_TOLERANCE:
            raise ValueError(f"POVM element is not Hermitian (deviation {deviation!r}).")

        return matrix

    def born(self, state: np.ndarray) -> float:
        """Born probability <u, A u> for a state vector u"""
        return float(np.real(np.vdot(state, self.matrix @ state)))
