"""Conjugacy classes of W_n: representatives, sizes and a brute-force check."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import SizeLimitError
from .rtree import RTree, enumerate_rtrees, tree_invariant
from .wreath import (
    MAX_ENUMERATION_HEIGHT,
    Element,
    enumerate_group,
    group_order,
    identity,
    to_leaf_permutation,
)


@dataclass(frozen=True)
class ConjClass:
    tree: RTree
    size: int
    representative: Element

    @property
    def cycle_notation(self) -> str:
        return str(to_leaf_permutation(self.representative))


def _placement_key(t: RTree):
    # Decides which child of a z=0 node goes on the left in a representative.
    # Compares the larger child, then the smaller, then the label; this
    # reproduces the published representatives of W_2 and W_3 exactly.
    if t.is_leaf:
        return (t.label,)
    hi, lo = sorted(t.children, key=_placement_key, reverse=True)
    return (_placement_key(hi), _placement_key(lo), t.label)


@lru_cache(maxsize=None)
def class_representative(t: RTree) -> Element:
    """An element of the class indexed by ``t``.

    (0; A, B) gives (rep A, rep B, 0) with the larger child (by placement
    key) on the left; (1; A, A) gives (rep A, identity, 1).
    """
    if t.is_leaf:
        return Element(t.label)
    a, b = t.children
    if t.label == 1:
        if a != b:
            raise ValueError(f"label 1 requires equal children: {t}")
        return Element(1, class_representative(a), identity(a.height))
    hi, lo = sorted((a, b), key=_placement_key, reverse=True)
    return Element(0, class_representative(hi), class_representative(lo))


@lru_cache(maxsize=None)
def class_size(t: RTree) -> int:
    if t.is_leaf:
        return 1
    a, b = t.children
    if t.label == 1:
        return class_size(a) * group_order(a.height)
    if a == b:
        return class_size(a) ** 2
    return 2 * class_size(a) * class_size(b)


def classes(n: int) -> list[ConjClass]:
    """One class per canonical tree of height n, in tree order."""
    return [ConjClass(t, class_size(t), class_representative(t)) for t in enumerate_rtrees(n)]


def bucket_oracle(n: int) -> Counter:
    """Count the elements of W_n falling on each tree invariant, by enumeration."""
    if n > MAX_ENUMERATION_HEIGHT:
        raise SizeLimitError(f"bucketing needs n <= {MAX_ENUMERATION_HEIGHT}, got {n}")
    return Counter(tree_invariant(x) for x in enumerate_group(n))


@lru_cache(maxsize=None)
def class_members(n: int) -> dict[RTree, tuple[Element, ...]]:
    """Elements of W_n grouped by class tree (n <= 4)."""
    groups: dict[RTree, list[Element]] = {}
    for x in enumerate_group(n):
        groups.setdefault(tree_invariant(x), []).append(x)
    return {t: tuple(v) for t, v in sorted(groups.items())}
