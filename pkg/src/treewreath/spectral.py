"""Isotypic projections through eigenspaces of class sums.

Each class sum acts on an isotypic subspace by a known integer scalar, so
the projection onto one of its eigenspaces is the Lagrange polynomial

    prod_{mu != lam} (A - mu I) / (lam - mu)

in the operator, costing one operator application per other eigenvalue.
Projecting successively through the eigenspaces picked out by a separating
set lands in a single isotypic subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .chartab import build_table, modified_table
from .conjugacy import class_members
from .errors import NotSeparableError, SizeLimitError
from .permrep import ClassSumOperator, class_sum_matrix, perm_eigenvalues, perm_sepsets
from .rtree import RTree, format_tree, irrep_dim
from .sepset import SepInstance, brute_force_minimal
from .wreath import enumerate_group, inverse, multiply

REGULAR_CEILING = 3
DFT_MAX_LENGTH = 2**20

SepSetLike = Sequence[Union[RTree, int]]


@dataclass
class OpCounter:
    """Tallies operator applications and butterfly steps."""

    applications: int = 0
    butterflies: int = 0


@dataclass(frozen=True, eq=False)
class IsotypicComponent:
    tree: RTree
    values: np.ndarray


def as_signal(x, length: Optional[int] = None) -> np.ndarray:
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 1:
        raise ValueError("a signal is one-dimensional")
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"signal has length {arr.shape[0]}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("signal contains NaN or infinite entries")
    return arr


def _log2_exact(length: int) -> int:
    m = length.bit_length() - 1
    if length < 1 or 2**m != length:
        raise ValueError(f"length {length} is not a power of two")
    return m


def lagrange_project(
    op: ClassSumOperator, lam: int, x: np.ndarray, counter: Optional[OpCounter] = None
) -> np.ndarray:
    """Project ``x`` onto the ``lam``-eigenspace of ``op``.

    ``x`` may also be a matrix, in which case each column is projected.
    """
    if lam not in op.spectrum:
        raise ValueError(f"{lam} is not in the spectrum {op.spectrum}")
    y = np.asarray(x, dtype=complex)
    if y.shape[0] != op.matrix.shape[0]:
        raise ValueError(f"length {y.shape[0]} does not match operator size {op.matrix.shape[0]}")
    for mu in op.spectrum:
        if mu == lam:
            continue
        y = (op.apply(y) - mu * y) / (lam - mu)
        if counter is not None:
            counter.applications += 1
    return y


def _resolve(sepset: SepSetLike, class_trees: Sequence[RTree]) -> list[RTree]:
    return [class_trees[c] if isinstance(c, (int, np.integer)) else c for c in sepset]


def _signatures(eigen: dict[RTree, dict[RTree, int]], sepset: list[RTree]) -> dict[RTree, tuple]:
    sigs = {w: tuple(lam[c] for c in sepset) for w, lam in eigen.items()}
    if len(set(sigs.values())) != len(sigs):
        raise NotSeparableError(
            "the given classes do not separate the isotypics: two share an eigenvalue signature"
        )
    return sigs


def _decompose(x, ops: dict[RTree, ClassSumOperator], sigs, sepset, counter):
    out = []
    for w, sig in sigs.items():
        y = x
        for c, lam in zip(sepset, sig):
            y = lagrange_project(ops[c], lam, y, counter)
        out.append(IsotypicComponent(w, y))
    return out


# leaf signals ---------------------------------------------------------------


def default_perm_sepset(n: int) -> list[RTree]:
    """First minimal separating set for V_n in tree order."""
    table = build_table(n)
    cols = perm_sepsets(n).sets[0]
    return [table.class_trees[c] for c in cols]


def isotypic_decompose_perm(
    n: int,
    x,
    sepset: Optional[SepSetLike] = None,
    counter: Optional[OpCounter] = None,
) -> list[IsotypicComponent]:
    """Split a leaf signal (length 2^n) into its n+1 isotypic components."""
    if n > 4:
        raise SizeLimitError("leaf-signal projections are built for n <= 4")
    size = 2**n
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        x = as_signal(x, size)
    elif x.shape[0] != size:
        raise ValueError(f"expected {size} rows, got {x.shape[0]}")
    table = build_table(n)
    sepset = default_perm_sepset(n) if sepset is None else _resolve(sepset, table.class_trees)
    sigs = _signatures(perm_eigenvalues(n), sepset)
    ops = {c: class_sum_matrix(c, n) for c in sepset}
    return _decompose(x, ops, sigs, sepset, counter)


def perm_projectors(n: int, sepset: Optional[SepSetLike] = None) -> dict[RTree, np.ndarray]:
    """Matrix of each isotypic projection on leaf signals."""
    comps = isotypic_decompose_perm(n, np.eye(2**n), sepset)
    return {c.tree: c.values for c in comps}


def haar_levels(x) -> list[np.ndarray]:
    """Haar multiresolution levels of a length-2^n signal.

    Level 0 is the global mean; level j >= 1 is the detail between block
    means at block sizes 2^(n-j+1) and 2^(n-j).  The levels sum to x.
    """
    arr = np.asarray(x, dtype=complex)
    n = _log2_exact(arr.shape[0])
    means = []
    for j in range(n + 1):
        block = 2 ** (n - j)
        m = arr.reshape(2**j, block, *arr.shape[1:]).mean(axis=1)
        means.append(np.repeat(m, block, axis=0))
    return [means[0]] + [means[j] - means[j - 1] for j in range(1, n + 1)]


def haar_projectors(n: int) -> list[np.ndarray]:
    return haar_levels(np.eye(2**n))


def match_isotypics_to_haar(n: int, sepset: Optional[SepSetLike] = None, tol: float = 1e-9):
    """Map each constituent of V_n to the Haar level spanning the same subspace.

    Subspaces are compared through their projection matrices.  Raises if
    some isotypic matches no level.
    """
    haar = haar_projectors(n)
    out = {}
    for w, proj in perm_projectors(n, sepset).items():
        hits = [j for j, h in enumerate(haar) if np.allclose(proj, h, atol=tol, rtol=0)]
        if len(hits) != 1:
            raise AssertionError(f"isotypic {w} matches Haar levels {hits}")
        out[w] = hits[0]
    return out


# group-algebra signals -----------------------------------------------------


@lru_cache(maxsize=None)
def _regular_index(n: int):
    elements = enumerate_group(n)
    return elements, {g: i for i, g in enumerate(elements)}


@lru_cache(maxsize=None)
def regular_eigenvalues(n: int) -> dict[RTree, dict[RTree, int]]:
    table = build_table(n)
    lam = modified_table(table).eigenvalues
    return {w: dict(zip(table.class_trees, row)) for w, row in zip(table.irreps, lam)}


@lru_cache(maxsize=None)
def regular_class_sum(t: RTree) -> ClassSumOperator:
    """Class sum on C[W_n]: (M f)(h) = sum over g in the class of f(g^-1 h)."""
    n = t.height
    if n > REGULAR_CEILING:
        raise SizeLimitError(f"group-algebra operators are built for n <= {REGULAR_CEILING}")
    elements, index = _regular_index(n)
    size = len(elements)
    mat = np.zeros((size, size), dtype=np.int64)
    for g in class_members(n)[t]:
        gi = inverse(g)
        for h_idx, h in enumerate(elements):
            mat[h_idx, index[multiply(gi, h)]] += 1
    mat.setflags(write=False)
    spectrum = tuple(sorted({lam[t] for lam in regular_eigenvalues(n).values()}))
    return ClassSumOperator(t, mat, spectrum)


@lru_cache(maxsize=None)
def default_regular_sepset(n: int) -> tuple[RTree, ...]:
    table = build_table(n)
    inst = SepInstance(modified_table(table).entries)
    cols = brute_force_minimal(inst).sets[0]
    return tuple(table.class_trees[c] for c in cols)


def isotypic_decompose_regular(
    n: int,
    x,
    sepset: Optional[SepSetLike] = None,
    counter: Optional[OpCounter] = None,
) -> list[IsotypicComponent]:
    """Split a signal on W_n (indexed in ``enumerate_group`` order) into isotypics."""
    if n > REGULAR_CEILING:
        raise SizeLimitError(f"group-algebra projections are built for n <= {REGULAR_CEILING}")
    size = 2 ** (2**n - 1)
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        x = as_signal(x, size)
    elif x.shape[0] != size:
        raise ValueError(f"expected {size} rows, got {x.shape[0]}")
    table = build_table(n)
    sepset = list(default_regular_sepset(n)) if sepset is None else _resolve(sepset, table.class_trees)
    sigs = _signatures(regular_eigenvalues(n), sepset)
    ops = {c: regular_class_sum(c) for c in sepset}
    return _decompose(x, ops, sigs, sepset, counter)


def regular_projectors(n: int, sepset: Optional[SepSetLike] = None) -> dict[RTree, np.ndarray]:
    comps = isotypic_decompose_regular(n, np.eye(2 ** (2**n - 1)), sepset)
    return {c.tree: c.values for c in comps}


def expected_projector_trace(w: RTree) -> int:
    return irrep_dim(w) ** 2


# cyclic group ----------------------------------------------------------------


def naive_dft(x) -> np.ndarray:
    """X_j = sum_k x_k exp(-2 pi i j k / N), by the full O(N^2) sum."""
    x = as_signal(x)
    size = x.shape[0]
    jk = np.outer(np.arange(size), np.arange(size))
    return np.exp(-2j * np.pi * jk / size) @ x


def eigenspace_dft(x, counter: Optional[OpCounter] = None) -> np.ndarray:
    """DFT of a power-of-two signal by successive eigenspace splitting.

    Stage s splits each current block by the eigenvalues +1 / -1 of the
    shift by half a block (z^(N/2), then z^(N/4), ..., z).  The +1 part keeps
    the half-sums; the -1 part keeps the half-differences, twisted into the
    basis where the next shift acts again as a half-block swap.  After
    log2 N stages each block is a single eigenspace of z, reached in
    bit-reversed order, which is undone before returning.  Coefficient j
    belongs to eigenvalue exp(2 pi i j / N) of the shift f(k) -> f(k+1).
    """
    arr = as_signal(x).copy()
    size = arr.shape[0]
    m = _log2_exact(size)
    if size > DFT_MAX_LENGTH:
        raise SizeLimitError(f"length {size} exceeds {DFT_MAX_LENGTH}")
    half = size // 2
    while half >= 1:
        blocks = arr.reshape(size // (2 * half), 2, half)
        top = blocks[:, 0, :]
        bottom = blocks[:, 1, :]
        twiddle = np.exp(-2j * np.pi * np.arange(half) / (2 * half))
        arr = np.stack([top + bottom, (top - bottom) * twiddle], axis=1).reshape(size)
        if counter is not None:
            counter.butterflies += size // 2
        half //= 2
    return arr[_bit_reversal(m)]


@lru_cache(maxsize=None)
def _bit_reversal(m: int) -> np.ndarray:
    idx = np.arange(2**m)
    rev = np.zeros_like(idx)
    for b in range(m):
        rev |= ((idx >> b) & 1) << (m - 1 - b)
    return rev


# signal files -------------------------------------------------------------------


def read_signal(path: Union[str, Path]) -> np.ndarray:
    """One value per line, ``re`` or ``re,im``; blank lines are skipped."""
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        try:
            if len(parts) == 1:
                values.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                values.append(complex(float(parts[0]), float(parts[1])))
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected 're' or 're,im', got {line!r}") from None
    return as_signal(values)


def component_json(comp: IsotypicComponent) -> dict:
    return {
        "tree": format_tree(comp.tree),
        "values": [[float(v.real), float(v.imag)] for v in comp.values],
    }


def operation_ratio(size: int) -> float:
    """Butterfly count of eigenspace_dft divided by N log2 N."""
    counter = OpCounter()
    eigenspace_dft(np.zeros(size), counter)
    return counter.butterflies / (size * math.log2(size))
