import numpy as np

from pydantic import Field

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray


class SpectralOutcome(DataModel):

    """Rank-1 part λ|m><m| of the inconclusive operator, usable as its own outcome."""

    eigenvalue: float = Field(
        ...,
        description="Eigenvalue λ of A_0.",
        gt=0.0,
        le=1.0 + 1e-9,
    )

    eigenvector: ComplexArray = Field(
        ...,
        description="Unit eigenvector |m>.",
    )

    label: str = Field(
        ...,
        description="Identifier of the outcome.",
    )

    @property
    def operator(self) -> np.ndarray:
        return self.eigenvalue * np.outer(self.eigenvector, self.eigenvector.conj())
