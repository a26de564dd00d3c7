from pydantic import Field

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray, ComplexScalar


class GramData(DataModel):

    """Overlaps s_ij = <u_i, u_j>, the determinant D of the component matrix and T = |D|²."""

    overlaps: ComplexArray = Field(
        ...,
        description="Hermitian matrix of pairwise overlaps with unit diagonal.",
    )

    determinant: ComplexScalar = Field(
        ...,
        description="Determinant of the matrix whose rows are the state components.",
    )

    gram_volume: float = Field(
        ...,
        description="Squared modulus T of the determinant.",
        ge=0.0,
    )
