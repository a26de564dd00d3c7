from .states import (
    biorthogonality_residual,
    canonical_reduce,
    dual_vectors,
    gram_data,
    gram_volume_closed_form,
    inner_product,
    orthogonal_blocks,
    random_ensemble,
    random_unitary,
    transform,
)

__all__ = [
    "biorthogonality_residual",
    "canonical_reduce",
    "dual_vectors",
    "gram_data",
    "gram_volume_closed_form",
    "inner_product",
    "orthogonal_blocks",
    "random_ensemble",
    "random_unitary",
    "transform",
]
