"""Exact spectral analysis on the automorphism groups of complete binary trees."""

from .errors import BudgetExceededError, NotSeparableError, SizeLimitError
from .wreath import (
    Element,
    LeafPermutation,
    enumerate_group,
    group_order,
    identity,
    inverse,
    multiply,
    to_leaf_permutation,
)
from .rtree import (
    RTree,
    canonicalize,
    count_rtrees,
    enumerate_rtrees,
    format_tree,
    irrep_dim,
    parse_tree,
    tree_invariant,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "NotSeparableError",
    "SizeLimitError",
    "Element",
    "LeafPermutation",
    "enumerate_group",
    "group_order",
    "identity",
    "inverse",
    "multiply",
    "to_leaf_permutation",
    "RTree",
    "canonicalize",
    "count_rtrees",
    "enumerate_rtrees",
    "format_tree",
    "irrep_dim",
    "parse_tree",
    "tree_invariant",
]
