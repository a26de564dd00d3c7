from .polynomial import DeterminantPolynomial
from .optimizer import face_tangency, make_solution, optimize, two_state_bound
from .surface import (
    max_feasible_along,
    section_asymptote,
    section_k2,
    surface_sample,
)
from .oracle import grid_oracle

__all__ = [
    "DeterminantPolynomial",
    "face_tangency",
    "grid_oracle",
    "make_solution",
    "max_feasible_along",
    "optimize",
    "section_asymptote",
    "section_k2",
    "surface_sample",
    "two_state_bound",
]
