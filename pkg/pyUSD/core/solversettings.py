import os
import toml

from pydantic import Field

from pyUSD.base import DataModel


class SolverSettings(DataModel):

    """Numerical tolerances and knobs shared by all operations."""

    independence_tolerance: float = Field(
        1e-12,
        description="Smallest Gram volume T accepted as linearly independent.",
        gt=0.0,
    )

    psd_tolerance: float = Field(
        1e-9,
        description="Most negative eigenvalue of A_0 still counted as feasible.",
        ge=0.0,
    )

    spectral_cutoff: float = Field(
        1e-10,
        description="Eigenvalues of A_0 below this fraction of the largest one are dropped.",
        ge=0.0,
    )

    newton_tolerance: float = Field(
        1e-12,
        description="Residual at which the tangency Newton iteration stops.",
        gt=0.0,
    )

    newton_max_iterations: int = Field(
        100,
        description="Iteration cap of the tangency Newton iteration.",
        ge=1,
    )

    tie_tolerance: float = Field(
        1e-10,
        description="Gains closer than this are considered equal.",
        ge=0.0,
    )

    oracle_resolution: int = Field(
        200,
        description="Grid points per axis of the grid oracle.",
        ge=2,
    )

    oracle_refinement: int = Field(
        10,
        description="Refinement factor of the oracle's local pass.",
        ge=1,
    )

    normalization_tolerance: float = Field(
        1e-6,
        description="Largest deviation from unit norm accepted in problem files.",
        gt=0.0,
    )

    n_jobs: int = Field(
        1,
        description="Number of joblib workers for face and grid evaluation.",
    )

    @classmethod
    def from_file(cls, path: str):
        """Reads settings from TOML, JSON or YAML, chosen by the extension."""

        extension = os.path.basename(path).split(".")[-1].lower()

        if extension == "toml":
            return cls.from_dict(toml.load(path))

        return super().from_file(path)

    def updated(self, **overrides) -> "SolverSettings":
        """Copy with the given non-None entries replaced."""
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return self.__class__(**{**self.dict(), **overrides})
