import numpy as np

from pydantic import Field, validator
from typing import List, Optional

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray
from .stateensemble import StateEnsemble


class ProblemFile(DataModel):

    """Discrimination problem as read from disk, complex numbers as [re, im]."""

    states: ComplexArray = Field(
        ...,
        description="N state vectors with N components each.",
    )

    priors: Optional[List[float]] = Field(
        description="Prior probabilities, uniform when omitted.",
        default=None,
    )

    values: Optional[List[float]] = Field(
        description="Signal values, all 1 when omitted.",
        default=None,
    )

    @validator("states")
    def check_square(cls, states):
        if states.ndim != 2 or states.shape[0] != states.shape[1]:
            raise ValueError(
                f"Expected N vectors of length N, got shape {states.shape}."
            )
        return states

    @validator("priors", "values")
    def check_lengths(cls, entries, values, field):
        states = values.get("states")
        if entries is not None and states is not None and len(entries) != len(states):
            raise ValueError(
                f"Expected {len(states)} {field.name}, got {len(entries)}."
            )
        return entries

    def to_ensemble(self, tolerance: float = 1e-6, normalize: bool = False) -> StateEnsemble:
        """Validates normalization and builds the ensemble.

        States off by more than `tolerance` in norm are rejected unless
        `normalize` is set. States within tolerance are rescaled to unit norm.
        """

        norms = np.linalg.norm(self.states, axis=1)

        for index, norm in enumerate(norms):
            if norm == 0.0:
                raise ValueError(f"State {index} is the zero vector.")
            if abs(norm - 1.0) > tolerance and not normalize:
                raise ValueError(
                    f"State {index} is not normalized: |u| = {norm!r} "
                    f"(tolerance {tolerance}). Use --normalize to rescale."
                )

        priors = None if self.priors is None else np.asarray(self.priors, dtype=float)
        if priors is not None and normalize:
            priors = priors / priors.sum()

        return StateEnsemble.from_matrix(
            self.states / norms[:, None], priors=priors, values=self.values
        )

    @classmethod
    def from_ensemble(cls, ensemble: StateEnsemble) -> "ProblemFile":
        return cls(
            states=ensemble.matrix,
            priors=list(ensemble.priors),
            values=list(ensemble.values),
        )
