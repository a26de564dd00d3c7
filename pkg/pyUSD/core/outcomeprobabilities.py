from pydantic import Field

from pyUSD.base import DataModel
from pyUSD.base.utils import RealArray


class OutcomeProbabilities(DataModel):

    """Detection probabilities P_j = k_j T and the inconclusive probability P_0."""

    detection: RealArray = Field(
        ...,
        description="Probability that detector j fires given input j.",
    )

    inconclusive: float = Field(
        ...,
        description="Prior-averaged probability of the inconclusive answer.",
    )

    born: RealArray = Field(
        ...,
        description="Matrix of Born probabilities <u_i, A_j u_i>, inputs i by outcomes j (A_0 last).",
    )
