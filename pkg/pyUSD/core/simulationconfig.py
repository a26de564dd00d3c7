from pydantic import Field

from pyUSD.base import DataModel


class SimulationConfig(DataModel):

    """Settings of a Monte Carlo run."""

    trials: int = Field(
        ...,
        description="Number of simulated signals.",
        ge=1,
    )

    seed: int = Field(
        0,
        description="Seed of the counter-based random streams.",
        ge=0,
        lt=2**64,
    )

    split_inconclusive: bool = Field(
        False,
        description="Read out the spectral parts of A_0 as separate outcomes.",
    )

    chunk_size: int = Field(
        4096,
        description="Trials per random stream. Fixes the stream partition.",
        ge=1,
    )

    n_jobs: int = Field(
        1,
        description="Number of joblib workers.",
    )
