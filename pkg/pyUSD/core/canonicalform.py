from pydantic import Field
from typing import Optional

from pyUSD.base import DataModel
from pyUSD.base.utils import ComplexArray


class CanonicalParameters(DataModel):

    """Parameters of the three-state canonical basis u1=(1,0,0), u2=(a2,b2,0), u3=(a3,b3 e^{iβ},c3)."""

    a2: float = Field(..., description="First component of u2.")
    b2: float = Field(..., description="Second component of u2, positive.")
    a3: float = Field(..., description="First component of u3.")
    b3: float = Field(..., description="Modulus of the second component of u3.")
    beta: float = Field(..., description="Phase of the second component of u3.")
    c3: float = Field(..., description="Third component of u3, positive.")


class CanonicalForm(DataModel):

    """States in a basis where they have lower-triangular components."""

    reduced_states: ComplexArray = Field(
        ...,
        description="Matrix whose j-th row holds u_j in the reduced basis.",
    )

    parameters: Optional[CanonicalParameters] = Field(
        description="Named parameters, only available for three states.",
        default=None,
    )
