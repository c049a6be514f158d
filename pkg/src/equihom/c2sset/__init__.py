"""Finite C2-simplicial sets and their Bredon homology."""
from .bredon import MackeyChainComplex, bredon_chains, bredon_homology, bredon_homology_range
from .builtins import BUILTINS, builtin, sphere, suspend_sigma, suspend_trivial
from .constructions import (
    CellLimitExceeded,
    cell_limit,
    coinduce,
    disjoint_basepoint,
    disjoint_union,
    fat_wedge,
    james_inclusion,
    james_stage,
    mapping_power,
    norm_space,
    product,
    quotient,
    smash,
    smash_power,
    wedge,
)
from .simplicial import (
    C2SSet,
    ComplexError,
    NotPointed,
    NotSubobject,
    UnknownSpace,
    from_simplicial_complex,
)
from .spheres import DEFAULT_TABLE, fill_sphere_table

__all__ = [
    "MackeyChainComplex", "bredon_chains", "bredon_homology", "bredon_homology_range",
    "BUILTINS", "builtin", "sphere", "suspend_sigma", "suspend_trivial",
    "coinduce", "disjoint_basepoint", "disjoint_union", "fat_wedge", "james_inclusion",
    "james_stage", "mapping_power", "norm_space", "product", "quotient", "smash",
    "smash_power", "wedge", "C2SSet", "ComplexError", "NotPointed", "NotSubobject",
    "UnknownSpace", "from_simplicial_complex", "DEFAULT_TABLE", "fill_sphere_table",
    "CellLimitExceeded", "cell_limit",
]
