import numpy as np

from pydantic import Field

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray
from .gramdata import GramData


class DualSystem(DataModel):

    """Unnormalized dual vectors v_j with <u_i, v_j> = δ_ij D."""

    duals: ComplexArray = Field(
        ...,
        description="Matrix whose j-th row holds the components of v_j.",
    )

    gram: GramData = Field(
        ...,
        description="Gram data of the signal states the duals belong to.",
    )

    @property
    def n(self) -> int:
        return self.duals.shape[0]

    @property
    def norms_squared(self) -> np.ndarray:
        return np.sum(np.abs(self.duals) ** 2, axis=1)

    @property
    def intercepts(self) -> np.ndarray:
        """Axis intercepts k_j = |v_j|^-2 of the positivity surface"""
        return 1.0 / self.norms_squared

    @property
    def gram_volume(self) -> float:
        return self.gram.gram_volume
