import numpy as np

from pydantic import Field, root_validator
from typing import List, Optional

from pyUSD.base import DataModel
from pyUSD.base.utils import RealArray
from .statevector import StateVector

PRIOR_TOLERANCE = 1e-12


class StateEnsemble(DataModel):

    """The N signal states u_j together with their priors p_j and values C_j."""

    states: List[StateVector] = Field(
        ...,
        description="Signal states, one per possible input.",
    )

    priors: Optional[RealArray] = Field(
        description="Prior probability of each signal. Defaults to uniform.",
        default=None,
    )

    values: Optional[RealArray] = Field(
        description="Value of detecting each signal. Defaults to 1.",
        default=None,
    )

    @root_validator(skip_on_failure=True)
    def check_ensemble(cls, fields):
        states = fields["states"]
        n = len(states)

        if n == 0:
            raise ValueError("Ensemble needs at least one state.")

        for index, state in enumerate(states):
            if state.dimension != n:
                raise ValueError(
                    f"State {index} has dimension {state.dimension}, expected {n} "
                    f"(N states must live in an N-dimensional space)."
                )

        priors = fields.get("priors")
        if priors is None:
            priors = RealArray.validate(np.full(n, 1.0 / n))
        if priors.shape != (n,):
            raise ValueError(f"Expected {n} priors, got shape {priors.shape}.")
        if np.any(priors <= 0.0):
            raise ValueError(f"Priors must be positive, got {priors.tolist()}.")
        if abs(priors.sum() - 1.0) > PRIOR_TOLERANCE:
            raise ValueError(f"Priors must sum to 1, got {priors.sum()!r}.")

        values = fields.get("values")
        if values is None:
            values = RealArray.validate(np.ones(n))
        if values.shape != (n,):
            raise ValueError(f"Expected {n} values, got shape {values.shape}.")
        if np.any(values < 0.0):
            raise ValueError(f"Values must be non-negative, got {values.tolist()}.")

        fields["priors"] = priors
        fields["values"] = values

        return fields

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def matrix(self) -> np.ndarray:
        """N×N matrix whose rows are the state components"""
        return np.array([state.components for state in self.states])

    @classmethod
    def from_matrix(cls, matrix, priors=None, values=None) -> "StateEnsemble":
        """Builds an ensemble from a matrix whose rows are the states."""

        states = [StateVector(components=row) for row in np.asarray(matrix, dtype=complex)]
        return cls(states=states, priors=priors, values=values)

    def with_states(self, matrix) -> "StateEnsemble":
        """Same priors and values, new state components (rows of matrix)."""
        return self.from_matrix(matrix, priors=self.priors, values=self.values)

    def with_values(self, values) -> "StateEnsemble":
        return self.from_matrix(self.matrix, priors=self.priors, values=values)
