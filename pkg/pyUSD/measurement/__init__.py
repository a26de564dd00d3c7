from .povm import (
    PSD_TOLERANCE,
    as_coefficients,
    born_matrix,
    build_povm,
    det_inconclusive,
    det_inconclusive_closed_form,
    dual_gram,
    inconclusive_matrix,
    is_feasible,
    min_eigenvalue_witness,
    outcome_probabilities,
)

__all__ = [
    "PSD_TOLERANCE",
    "as_coefficients",
    "born_matrix",
    "build_povm",
    "det_inconclusive",
    "det_inconclusive_closed_form",
    "dual_gram",
    "inconclusive_matrix",
    "is_feasible",
    "min_eigenvalue_witness",
    "outcome_probabilities",
]
