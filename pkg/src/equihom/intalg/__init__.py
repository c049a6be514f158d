"""Exact integer linear algebra: Smith normal form, groups, homology."""
from .matrix import (
    IntMatrix,
    SmithDecomposition,
    determinant,
    invariant_factors,
    kernel_basis,
    rank,
    smith_decomposition,
    smith_normal_form,
)
from .groups import (
    FGAbelianGroup,
    GroupHom,
    HomologyData,
    IllDefinedHomError,
    IntAlgError,
    NonComposableError,
    NotAComplexError,
    NotChainMapError,
    NotInLatticeError,
    Subquotient,
    cokernel,
    homology_at,
    image,
    induce_on_homology,
    is_isomorphism,
    kernel,
    present,
    subquotient,
)
from .chains import ChainComplex, ComplexHomology, check_chain_map, induced_map

__all__ = [
    "IntMatrix", "SmithDecomposition", "determinant", "invariant_factors",
    "kernel_basis", "rank", "smith_decomposition", "smith_normal_form",
    "FGAbelianGroup", "GroupHom", "HomologyData", "IllDefinedHomError",
    "IntAlgError", "NonComposableError", "NotAComplexError", "NotChainMapError",
    "NotInLatticeError", "Subquotient", "cokernel", "homology_at", "image",
    "induce_on_homology", "is_isomorphism", "kernel", "present", "subquotient",
    "ChainComplex", "ComplexHomology", "check_chain_map", "induced_map",
]
