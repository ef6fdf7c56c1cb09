"""Exact calculus of semi-elementary and elementary imsets.

Representations of ``u<A,B|C>`` as sums of elementary imsets, their rift
patterns, σ-decomposability, and connectivity of the fiber under two-by-two
moves.
"""

from .core import (
    ConfigMatrix,
    ElementaryImset,
    Imset,
    Triplet,
    add,
    configuration_matrix,
    elementary,
    elementary_family,
    inner_product,
    scale,
    semi_elementary,
    split_identity_check,
)
from .exceptions import ImsetError
from .representation import (
    CoeffVector,
    Move,
    RepGrid,
    apply_move,
    available_moves,
    canonical_representative,
    flatten,
    grid_from_vector,
    relabel,
    standard_representation,
    validate,
)
from .rift import (
    Rift,
    RiftPattern,
    boundary_maps,
    classify_points,
    detect_rifts,
    eliminate_rift,
    is_separable,
    is_sigma_decomposable,
    normalize_to_standard,
    select_eliminable_rift,
)

__version__ = "0.1.0"

__all__ = [
    "ImsetError",
    "ConfigMatrix",
    "ElementaryImset",
    "Imset",
    "Triplet",
    "add",
    "configuration_matrix",
    "elementary",
    "elementary_family",
    "inner_product",
    "scale",
    "semi_elementary",
    "split_identity_check",
    "CoeffVector",
    "Move",
    "RepGrid",
    "apply_move",
    "available_moves",
    "canonical_representative",
    "flatten",
    "grid_from_vector",
    "relabel",
    "standard_representation",
    "validate",
    "Rift",
    "RiftPattern",
    "boundary_maps",
    "classify_points",
    "detect_rifts",
    "eliminate_rift",
    "is_separable",
    "is_sigma_decomposable",
    "normalize_to_standard",
    "select_eliminable_rift",
]
