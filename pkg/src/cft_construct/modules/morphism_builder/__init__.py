from .builder import (
    BuildOverrides,
    CharMorphismBuilder,
    CharMorphismData,
    SearchMode,
    build,
    change_of_basis_matrix,
    check_invariants,
    pair_matrix,
    recompute_dlogs,
    u_values,
)
from .document import JSON_OPTIONS, CharMorphismDocument, from_document, to_document
from .group_plan import AbelianGroupSpec, GroupPlan, invariant_factors, plan_group
from .linalg import invert_mod_e, is_invertible_mod_e, is_surjective, solve_mod_e

__all__ = [
    "AbelianGroupSpec",
    "BuildOverrides",
    "CharMorphismBuilder",
    "CharMorphismData",
    "CharMorphismDocument",
    "GroupPlan",
    "JSON_OPTIONS",
    "SearchMode",
    "build",
    "change_of_basis_matrix",
    "check_invariants",
    "from_document",
    "invariant_factors",
    "invert_mod_e",
    "is_invertible_mod_e",
    "is_surjective",
    "pair_matrix",
    "plan_group",
    "recompute_dlogs",
    "solve_mod_e",
    "to_document",
    "u_values",
]
