import numpy as np

from pydantic import Field, validator

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray

NORM_TOLERANCE = 1e-12


class StateVector(DataModel):

    """Normalized pure state given by its complex components in a fixed basis."""

    components: ComplexArray = Field(
        ...,
        description="Complex amplitudes of the state.",
    )

    @validator("components")
    def check_normalization(cls, components):
        if components.ndim != 1 or components.size == 0:
            raise ValueError(
                f"State components must be a non-empty vector, got shape {components.shape}."
            )

        norm = np.linalg.norm(components)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"State is not normalized: |u| = {norm!r}.")

        return components

    @property
    def dimension(self) -> int:
        return self.components.size

    @classmethod
    def normalized(cls, components) -> "StateVector":
        """Builds a state from unnormalized components."""
        components = np.asarray(components, dtype=complex)
        return cls(components=components / np.linalg.norm(components))
