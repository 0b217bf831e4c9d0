"""Exact character tables of W_n and the derived eigenvalue tables.

Characters are evaluated recursively on (irrep tree, class tree) pairs:

* irrep (t; S, S) at class (0; A, B):  chi_S(A) * chi_S(B)
* irrep (t; S, S) at class (1; A, A):  (-1)^t * chi_S(A)
* irrep (0; S1, S2), S1 != S2, at (0; A, B):
  chi_S1(A) chi_S2(B) + chi_S1(B) chi_S2(A)
* irrep (0; S1, S2), S1 != S2, at any swapping class: 0

All values are rational integers, so tables are plain Python ints.
``explicit_irrep`` builds the matrices themselves and serves as an
independent check on these formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .conjugacy import ConjClass, classes
from .errors import SizeLimitError
from .rtree import RTree, enumerate_rtrees, irrep_dim
from .wreath import Element, group_order, identity

TABLE_CEILING = 4
EXPLICIT_CEILING = 3


@lru_cache(maxsize=1 << 20)
def character_value(irrep: RTree, cls: RTree) -> int:
    if irrep.height != cls.height:
        raise ValueError(f"height mismatch: irrep {irrep.height}, class {cls.height}")
    if irrep.is_leaf:
        return -1 if irrep.label and cls.label else 1
    s1, s2 = irrep.children
    a, b = cls.children
    if s1 == s2:
        if cls.label == 1:
            sign = -1 if irrep.label else 1
            return sign * character_value(s1, a)
        return character_value(s1, a) * character_value(s1, b)
    if cls.label == 1:
        return 0
    return character_value(s1, a) * character_value(s2, b) + character_value(
        s1, b
    ) * character_value(s2, a)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    irreps: tuple[RTree, ...]
    classes: tuple[ConjClass, ...]
    values: tuple[tuple[int, ...], ...]

    @property
    def dims(self) -> list[int]:
        return [row[0] for row in self.values]

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @property
    def class_trees(self) -> list[RTree]:
        return [c.tree for c in self.classes]

    def row_index(self, irrep: RTree) -> int:
        return self.irreps.index(irrep)

    def column_index(self, cls: RTree) -> int:
        return self.class_trees.index(cls)

    def as_array(self) -> np.ndarray:
        return _exact_array(self.values)


def _exact_array(values) -> np.ndarray:
    """int64 when every entry is small enough for exact matmuls, else object."""
    arr = np.array(values, dtype=object)
    if arr.size and max(abs(int(v)) for v in arr.flat) < 2**20:
        return arr.astype(np.int64)
    return arr


def build_table(n: int, allow_large: bool = False) -> CharacterTable:
    """Character table with rows and columns in tree order.

    n = 5 (26795 x 26795 entries) needs ``allow_large=True``.
    """
    if n > TABLE_CEILING + 1 or (n > TABLE_CEILING and not allow_large):
        raise SizeLimitError(
            f"character tables are built for n <= {TABLE_CEILING}"
            + ("" if n > TABLE_CEILING + 1 else "; n = 5 needs allow_large=True (CLI: --allow-large)")
        )
    return _build_table(n)


@lru_cache(maxsize=None)
def _build_table(n: int) -> CharacterTable:
    irreps = tuple(enumerate_rtrees(n))
    cols = tuple(classes(n))
    values = tuple(tuple(character_value(r, c.tree) for c in cols) for r in irreps)
    return CharacterTable(n, irreps, cols, values)


@dataclass(frozen=True)
class ModifiedTable:
    """b_ij = chi_i(C_j) / dim_i and the class-sum eigenvalues |C_j| b_ij."""

    table: CharacterTable
    entries: tuple[tuple[Fraction, ...], ...]
    eigenvalues: tuple[tuple[int, ...], ...]

    def eigenvalue(self, cls: RTree, irrep: RTree) -> int:
        return self.eigenvalues[self.table.row_index(irrep)][self.table.column_index(cls)]


def modified_table(table: CharacterTable) -> ModifiedTable:
    entries = []
    eigen = []
    for row in table.values:
        dim = row[0]
        entries.append(tuple(Fraction(v, dim) for v in row))
        lam_row = []
        for size, v in zip(table.sizes, row):
            q, r = divmod(size * v, dim)
            if r:
                raise ArithmeticError(f"class-sum eigenvalue {size}*{v}/{dim} is not an integer")
            lam_row.append(q)
        eigen.append(tuple(lam_row))
    return ModifiedTable(table, tuple(entries), tuple(eigen))


def row_orthogonality(table: CharacterTable) -> np.ndarray:
    """sum_j |C_j| chi_i(C_j) chi_k(C_j); equals |G| * I for a valid table."""
    chi = table.as_array()
    sizes = np.array(table.sizes, dtype=chi.dtype)
    return (chi * sizes) @ chi.T


def column_orthogonality(table: CharacterTable) -> np.ndarray:
    """sum_i chi_i(C_j) chi_i(C_k); equals diag(|G| / |C_j|) for a valid table."""
    chi = table.as_array()
    return chi.T @ chi


def check_orthogonality(table: CharacterTable) -> bool:
    order = group_order(table.n)
    k = len(table.irreps)
    rows = row_orthogonality(table)
    cols = column_orthogonality(table)
    expected_rows = np.diag([order] * k)
    expected_cols = np.diag([order // s for s in table.sizes])
    return bool(np.array_equal(rows, expected_rows) and np.array_equal(cols, expected_cols))


# explicit matrices ---------------------------------------------------------


def _swap_operator(d: int) -> np.ndarray:
    """P with P (u kron v) = v kron u on C^d kron C^d."""
    p = np.zeros((d * d, d * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            p[j * d + i, i * d + j] = 1
    return p


def explicit_irrep(irrep: RTree, x: Element) -> np.ndarray:
    """Integer matrix of ``x`` in the irreducible indexed by ``irrep``.

    Height-1 labels give the trivial and sign characters of Z_2.  For
    (t; S, S) the element (a, b, z) maps to (-1)^(t z) P^z (rho(a) kron rho(b)),
    P the tensor swap.  For (0; S1, S2) the representation is induced from
    the no-swap subgroup with coset representatives identity and the root swap.
    """
    if irrep.height != x.height:
        raise ValueError(f"height mismatch: irrep {irrep.height}, element {x.height}")
    if irrep.height > EXPLICIT_CEILING:
        raise SizeLimitError(f"explicit matrices are built for n <= {EXPLICIT_CEILING}")
    return _explicit(irrep, x).copy()


@lru_cache(maxsize=1 << 16)
def _explicit(irrep: RTree, x: Element) -> np.ndarray:
    if irrep.is_leaf:
        out = np.array([[-1 if irrep.label and x.swap else 1]], dtype=np.int64)
    else:
        s1, s2 = irrep.children
        if s1 == s2:
            out = np.kron(_explicit(s1, x.left), _explicit(s1, x.right))
            if x.swap:
                out = _swap_operator(irrep_dim(s1)) @ out
                if irrep.label:
                    out = -out
        else:
            inner = lambda c0, c1: np.kron(_explicit(s1, c0), _explicit(s2, c1))
            d = irrep_dim(s1) * irrep_dim(s2)
            out = np.zeros((2 * d, 2 * d), dtype=np.int64)
            # t_i^-1 x t_j with t_1 = identity, t_2 = root swap s:
            #   s (c0, c1, z) = (c0, c1, 1 ^ z), (c0, c1, z) s = (c1, c0, 1 ^ z)
            a, b = x.left, x.right
            if x.swap == 0:
                out[:d, :d] = inner(a, b)
                out[d:, d:] = inner(b, a)
            else:
                out[:d, d:] = inner(b, a)  # x s
                out[d:, :d] = inner(a, b)  # s x
    out.setflags(write=False)
    return out


def root_swap(n: int) -> Element:
    half = identity(n - 1)
    return Element(1, half, half)
