"""The leaf permutation representation V_n and its class-sum operators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .chartab import build_table, modified_table
from .conjugacy import class_members, classes
from .errors import SizeLimitError
from .rtree import RTree
from .sepset import MinimalSets, SepInstance, brute_force_minimal, greedy
from .wreath import group_order, leaf_images, to_leaf_permutation

OPERATOR_CEILING = 4


@dataclass(frozen=True)
class PermDecomposition:
    n: int
    character: tuple[int, ...]
    multiplicities: dict[RTree, int]

    @property
    def constituents(self) -> list[RTree]:
        return [t for t, m in self.multiplicities.items() if m > 0]


@dataclass(frozen=True, eq=False)
class ClassSumOperator:
    """Sum of the matrices of one conjugacy class acting on some module.

    ``spectrum`` lists the distinct eigenvalues on that module, ascending.
    """

    tree: RTree
    matrix: np.ndarray
    spectrum: tuple[int, ...]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x


def perm_character(n: int) -> tuple[int, ...]:
    """Fixed leaves of each class representative, in class tree order."""
    return tuple(to_leaf_permutation(c.representative).fixed_points() for c in classes(n))


@lru_cache(maxsize=None)
def decompose(n: int) -> PermDecomposition:
    """Multiplicity of each irreducible in V_n by the character inner product."""
    table = build_table(n)
    chi_v = perm_character(n)
    order = group_order(n)
    mult = {}
    for irrep, row in zip(table.irreps, table.values):
        total = sum(s * v * x for s, v, x in zip(table.sizes, chi_v, row))
        m, r = divmod(total, order)
        if r:
            raise ArithmeticError(f"inner product with {irrep} is {total}/{order}, not an integer")
        mult[irrep] = m
    return PermDecomposition(n, chi_v, mult)


@lru_cache(maxsize=None)
def perm_eigenvalues(n: int) -> dict[RTree, dict[RTree, int]]:
    """lambda(class, W) for each constituent W of V_n, keyed [W][class]."""
    table = build_table(n)
    lam = modified_table(table).eigenvalues
    out = {}
    for w in decompose(n).constituents:
        row = lam[table.row_index(w)]
        out[w] = dict(zip(table.class_trees, row))
    return out


@lru_cache(maxsize=None)
def _leaf_image_table(n: int) -> dict[RTree, np.ndarray]:
    return {
        t: np.array([leaf_images(x) for x in members])
        for t, members in class_members(n).items()
    }


def class_sum_matrix(t: RTree, n: Optional[int] = None) -> ClassSumOperator:
    """Integer 2^n x 2^n matrix of the class sum of ``t`` acting on leaf signals.

    Column i of a single element's matrix is the unit vector at its image of leaf i.
    """
    n = t.height if n is None else n
    if t.height != n:
        raise ValueError(f"tree height {t.height} does not match n = {n}")
    if n > OPERATOR_CEILING:
        raise SizeLimitError(f"class-sum matrices are built for n <= {OPERATOR_CEILING}")
    images = _leaf_image_table(n)[t]
    size = 2**n
    mat = np.zeros((size, size), dtype=np.int64)
    cols = np.broadcast_to(np.arange(size), images.shape)
    np.add.at(mat, (images, cols), 1)
    mat.setflags(write=False)
    spectrum = tuple(sorted({lam[t] for lam in perm_eigenvalues(n).values()}))
    return ClassSumOperator(t, mat, spectrum)


@lru_cache(maxsize=None)
def reduced_instance(n: int) -> SepInstance:
    """Modified-table rows of the constituents of V_n over all class columns."""
    table = build_table(n)
    entries = modified_table(table).entries
    rows = tuple(entries[table.row_index(w)] for w in decompose(n).constituents)
    return SepInstance(rows, tuple(table.class_trees))


def perm_sepsets(n: int, method: str = "brute", max_k: Optional[int] = None) -> MinimalSets:
    """Separating sets of class sums for V_n, as column indices in tree order.

    ``method="greedy"`` returns a single set with ``k`` set to its size.
    """
    inst = reduced_instance(n)
    if method == "brute":
        return brute_force_minimal(inst, max_k=max_k)
    if method == "greedy":
        s = greedy(inst)
        return MinimalSets(len(s), [s])
    raise ValueError(f"unknown method {method!r}")


def signature(n: int, w: RTree, sepset: list[RTree]) -> tuple[int, ...]:
    lam = perm_eigenvalues(n)[w]
    return tuple(lam[c] for c in sepset)
