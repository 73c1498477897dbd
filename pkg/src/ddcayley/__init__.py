"""Divisible design Cayley graphs over affine groups of finite fields."""

from .checks import DDGParams, ddg_check, dds_check, dds_discover_subgroup, theorem2_params
from .construction import (
    PermutationPhi,
    build_generating_set,
    enumerate_star_permutations,
    lemma2_permutation,
    star_condition_check,
)
from .field import Field, FieldSpec, field_for
from .graphs import Graph, cayley_graph, graph6_decode, graph6_encode
from .groups import AffineGroup, FiniteGroup
from .iso import are_isomorphic, canonical_form, classify

__version__ = "0.1.0"

__all__ = [
    "AffineGroup",
    "DDGParams",
    "Field",
    "FieldSpec",
    "FiniteGroup",
    "Graph",
    "PermutationPhi",
    "are_isomorphic",
    "build_generating_set",
    "canonical_form",
    "cayley_graph",
    "classify",
    "ddg_check",
    "dds_check",
    "dds_discover_subgroup",
    "enumerate_star_permutations",
    "field_for",
    "graph6_decode",
    "graph6_encode",
    "lemma2_permutation",
    "star_condition_check",
    "theorem2_params",
]
