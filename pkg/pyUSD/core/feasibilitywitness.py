from pydantic import Field

from pyUSD.base import DataModel


class FeasibilityWitness(DataModel):

    """Outcome of the positivity test of A_0 together with its smallest eigenvalue."""

    feasible: bool = Field(
        ...,
        description="Whether A_0 is positive semi-definite within tolerance.",
    )

    min_eigenvalue: float = Field(
        ...,
        description="Smallest eigenvalue of A_0.",
    )

    tolerance: float = Field(
        ...,
        description="Tolerance the eigenvalue was tested against.",
    )

    def __bool__(self) -> bool:
        return self.feasible
