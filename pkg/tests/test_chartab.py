import itertools
from fractions import Fraction

import numpy as np
import pytest

from treewreath.chartab import (
    build_table,
    character_value,
    check_orthogonality,
    explicit_irrep,
    modified_table,
    root_swap,
)
from treewreath.errors import SizeLimitError
from treewreath.rtree import enumerate_rtrees, irrep_dim, parse_tree
from treewreath.wreath import enumerate_group, group_order, multiply, random_element

T = parse_tree


def test_height_two_table():
    assert [list(r) for r in build_table(2).values] == [
        [1, 1, 1, 1, 1],
        [2, 0, -2, 0, 0],
        [1, -1, 1, 1, -1],
        [1, 1, 1, -1, -1],
        [1, -1, 1, -1, 1],
    ]


def test_single_values():
    assert character_value(T("(0 0 1)"), T("(0 1 1)")) == -2
    assert character_value(T("(1 1 1)"), T("(1 0 0)")) == -1
    assert character_value(T("(0 0 1)"), T("(1 1 1)")) == 0


def test_modified_row_and_eigenvalue():
    mod = modified_table(build_table(2))
    assert mod.entries[1] == (1, 0, -1, 0, 0)
    assert all(isinstance(v, Fraction) for v in mod.entries[1])
    assert mod.eigenvalue(T("(0 1 1)"), T("(0 0 1)")) == -1
    assert mod.eigenvalue(T("(1 0 0)"), T("(1 0 0)")) == -2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orthogonality(n):
    assert check_orthogonality(build_table(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimensions(n):
    table = build_table(n)
    assert sum(d * d for d in table.dims) == group_order(n)
    assert table.dims == [irrep_dim(t) for t in table.irreps]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_traces_of_explicit_matrices(n):
    table = build_table(n)
    for irrep, row in zip(table.irreps, table.values):
        for cls, value in zip(table.classes, row):
            assert int(np.trace(explicit_irrep(irrep, cls.representative))) == value


@pytest.mark.parametrize("n", [2, 3])
def test_explicit_matrices_multiply(n, rng):
    for irrep in enumerate_rtrees(n):
        for _ in range(25):
            x, y = random_element(n, rng), random_element(n, rng)
            assert np.array_equal(
                explicit_irrep(irrep, multiply(x, y)), explicit_irrep(irrep, x) @ explicit_irrep(irrep, y)
            )


def test_explicit_matrices_irreducible():
    # sum |chi(g)|^2 over the group equals |G| exactly for irreducibles
    group = enumerate_group(3)
    for irrep in enumerate_rtrees(3):
        total = sum(int(np.trace(explicit_irrep(irrep, g))) ** 2 for g in group)
        assert total == group_order(3)


def dihedral_table():
    # D4 = <r, s | r^4 = s^2 = 1, s r s = r^-1> as 4x4 permutations
    r = np.roll(np.eye(4, dtype=int), 1, axis=0)
    s = np.eye(4, dtype=int)[[0, 3, 2, 1]]
    group = [np.linalg.matrix_power(r, k) @ sk for k in range(4) for sk in (np.eye(4, dtype=int), s)]
    key = lambda m: m.tobytes()
    classes, seen = [], set()
    for g in group:
        if key(g) in seen:
            continue
        cls = {key(h @ g @ h.T) for h in group}
        seen |= cls
        classes.append([m for m in group if key(m) in cls])
    # linear characters from the images of r and s; the 2-dim one from the defining action on the square
    chars = []
    for er, es in itertools.product([1, -1], repeat=2):
        def lin(m, er=er, es=es):
            for k in range(4):
                for j, sj in enumerate((np.eye(4, dtype=int), s)):
                    if np.array_equal(m, np.linalg.matrix_power(r, k) @ sj):
                        return er**k * es**j
        chars.append([lin(c[0]) for c in classes])
    rot = np.array([[0, -1], [1, 0]])
    ref = np.array([[1, 0], [0, -1]])
    def two_dim(m):
        for k in range(4):
            for j in range(2):
                if np.array_equal(m, np.linalg.matrix_power(r, k) @ np.linalg.matrix_power(s, j)):
                    return int(np.trace(np.linalg.matrix_power(rot, k) @ np.linalg.matrix_power(ref, j)))
    chars.append([two_dim(c[0]) for c in classes])
    return sorted(chars), sorted(len(c) for c in classes)


def test_matches_dihedral_table_up_to_permutation():
    ref_rows, ref_sizes = dihedral_table()
    table = build_table(2)
    assert sorted(table.sizes) == ref_sizes
    ours = np.array(table.values)
    for perm in itertools.permutations(range(5)):
        cols = ours[:, perm]
        if sorted(map(list, cols)) == ref_rows:
            break
    else:
        pytest.fail("no column permutation matches the dihedral table")


def test_root_swap_is_swap():
    assert root_swap(3).swap == 1
    assert root_swap(3).left == root_swap(3).right


def test_ceilings():
    with pytest.raises(SizeLimitError):
        build_table(5)
    with pytest.raises(SizeLimitError):
        build_table(6, allow_large=True)
    with pytest.raises(SizeLimitError):
        explicit_irrep(enumerate_rtrees(4)[0], root_swap(4))


def test_height_mismatch():
    with pytest.raises(ValueError):
        character_value(T("(0 0 0)"), T("(0 (0 0 0) (0 0 0))"))
