from pydantic import Field

from pyUSD.base import DataModel
from pyUSD.base.utils import RealArray


class SurfaceSample(DataModel):

    """Points of the surface det(A_0) = 0 within the non-negative orthant."""

    points: RealArray = Field(
        ...,
        description="Rows of coefficient vectors lying on the positivity boundary.",
    )
