"""One test per acceptance criterion; run with -s to see a PASS/FAIL line each."""

import contextlib
import itertools
import time
import warnings

import numpy as np
import pytest

from reference_data import W2_CLASSES, W2_MINIMAL_SETS, W3_CLASSES, W3_MINIMAL_SETS
from treewreath.chartab import build_table, check_orthogonality, explicit_irrep, modified_table
from treewreath.conjugacy import bucket_oracle, class_representative, class_size, classes
from treewreath.permrep import class_sum_matrix, decompose, perm_eigenvalues, perm_sepsets
from treewreath.rtree import count_rtrees, enumerate_rtrees, parse_tree
from treewreath.sepset import (
    MTCInstance,
    SepInstance,
    brute_force_minimal,
    brute_force_mtc,
    greedy,
    is_separating,
    mtc_to_sepset,
    sepset_solvable,
)
from treewreath.spectral import (
    OpCounter,
    default_perm_sepset,
    eigenspace_dft,
    expected_projector_trace,
    haar_levels,
    isotypic_decompose_perm,
    isotypic_decompose_regular,
    match_isotypics_to_haar,
    naive_dft,
    regular_projectors,
)
from treewreath.wreath import LeafPermutation, group_order, to_leaf_permutation

TOL = 1e-9


@contextlib.contextmanager
def criterion(label):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\nFAIL  {label}  ({time.perf_counter() - start:.2f}s)")
        raise
    print(f"\nPASS  {label}  ({time.perf_counter() - start:.2f}s)")


def quiet_parse(text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return parse_tree(text)


def regular_instance(n):
    table = build_table(n)
    return SepInstance(modified_table(table).entries, tuple(table.class_trees))


def listed(inst, sets, listing):
    index_of = {quiet_parse(tree): idx for idx, _, tree in listing}
    return sorted(sorted(index_of[inst.col_labels[c]] for c in s) for s in sets)


def test_01_counts():
    with criterion("1 tree counts and group orders"):
        start = time.perf_counter()
        for n, count, order in [(1, 2, 2), (2, 5, 8), (3, 20, 128), (4, 230, 32768)]:
            assert count_rtrees(n) == count
            assert len(enumerate_rtrees(n)) == count
            assert group_order(n) == order
        assert time.perf_counter() - start < 1.0


def test_02_conjugacy_oracle():
    with criterion("2 bucketing W_4 by tree invariant"):
        start = time.perf_counter()
        buckets = bucket_oracle(4)
        elapsed = time.perf_counter() - start
        assert len(buckets) == 230
        assert sum(buckets.values()) == 32768
        assert all(buckets[t] == class_size(t) for t in enumerate_rtrees(4))
        assert elapsed < 60


def test_03_class_representatives():
    with criterion("3 representatives bit-exact for W_2 and W_3"):
        for listing, n in [(W2_CLASSES, 2), (W3_CLASSES, 3)]:
            assert len(listing) == count_rtrees(n)
            for _, cycles, tree in listing:
                rep = class_representative(quiet_parse(tree))
                assert to_leaf_permutation(rep) == LeafPermutation.from_cycles(cycles, 2**n)


def dihedral_rows():
    # D4 on the square's vertices; classes and characters computed from scratch
    r = tuple((i + 1) % 4 for i in range(4))
    s = (0, 3, 2, 1)
    compose = lambda p, q: tuple(p[q[i]] for i in range(4))
    elems = {}
    for k, j in itertools.product(range(4), range(2)):
        g = tuple(range(4))
        for _ in range(k):
            g = compose(r, g)
        if j:
            g = compose(g, s)
        elems[g] = (k, j)
    inv = lambda p: tuple(sorted(range(4), key=lambda i: p[i]))
    classes_, seen = [], set()
    for g in elems:
        if g not in seen:
            cls = {compose(compose(h, g), inv(h)) for h in elems}
            seen |= cls
            classes_.append(next(iter(cls)))
    rot = np.array([[0, -1], [1, 0]])
    ref = np.array([[1, 0], [0, -1]])
    rows = []
    for er, es in itertools.product([1, -1], repeat=2):
        rows.append(tuple(er ** elems[g][0] * es ** elems[g][1] for g in classes_))
    rows.append(tuple(
        int(np.trace(np.linalg.matrix_power(rot, elems[g][0]) @ np.linalg.matrix_power(ref, elems[g][1])))
        for g in classes_
    ))
    return rows


def test_04_character_tables():
    with criterion("4 character tables: orthogonality, dimensions, explicit traces, dihedral match"):
        for n in range(1, 5):
            table = build_table(n)
            assert check_orthogonality(table)
            assert sum(d * d for d in table.dims) == group_order(n)
        for n in range(1, 4):
            table = build_table(n)
            for irrep, row in zip(table.irreps, table.values):
                for cls, value in zip(table.classes, row):
                    assert int(np.trace(explicit_irrep(irrep, cls.representative))) == value
        ours = np.array(build_table(2).values)
        ref = sorted(dihedral_rows())
        assert any(sorted(map(tuple, ours[:, list(p)].tolist())) == ref for p in itertools.permutations(range(5)))


def test_05_regular_separating_sets():
    with criterion("5 regular separating sets (n=1..3 exhaustive, n=4 greedy)"):
        assert brute_force_minimal(regular_instance(1)).k == 1

        inst = regular_instance(2)
        res = brute_force_minimal(inst)
        assert res.k == 2 and len(res.sets) == 3
        assert listed(inst, res.sets, W2_CLASSES) == sorted(sorted(s) for s in W2_MINIMAL_SETS)

        inst = regular_instance(3)
        start = time.perf_counter()
        assert brute_force_minimal(inst, max_k=3).k is None
        res = brute_force_minimal(inst)
        assert time.perf_counter() - start < 60
        assert res.k == 4 and len(res.sets) == 40
        assert listed(inst, res.sets, W3_CLASSES) == sorted(sorted(s) for s in W3_MINIMAL_SETS)

        inst = regular_instance(4)
        start = time.perf_counter()
        chosen = greedy(inst)
        assert time.perf_counter() - start < 300
        assert is_separating(inst, chosen)
        assert len(chosen) <= 10
        print(f"\n      n=4 greedy size {len(chosen)}")


def test_06_permutation_representation():
    with criterion("6 leaf representation: constituents and separating sets"):
        for n, k, count in [(2, 1, 2), (3, 2, 60), (4, 2, 1940)]:
            dec = decompose(n)
            assert len(dec.constituents) == n + 1
            assert all(dec.multiplicities[w] == 1 for w in dec.constituents)
            res = perm_sepsets(n)
            assert (res.k, len(res.sets)) == (k, count)
        table = build_table(2)
        swaps = sorted(j for j, t in enumerate(table.class_trees) if t.label == 1)
        assert sorted(s for (s,) in perm_sepsets(2).sets) == swaps
        assert sorted(j + 1 for j in swaps) == [4, 5]


def test_07_spectral_engine():
    with criterion("7 leaf-signal isotypic projections (100 signals per n)"):
        rng = np.random.default_rng(7)
        for n in (2, 3, 4):
            size = 2**n
            sepset = default_perm_sepset(n)
            ops = [class_sum_matrix(c) for c in sepset]
            eigen = perm_eigenvalues(n)
            signals = rng.normal(size=(100, size)) + 1j * rng.normal(size=(100, size))
            for x in signals:
                comps = isotypic_decompose_perm(n, x, sepset)
                assert len(comps) == n + 1
                assert np.allclose(sum(c.values for c in comps), x, atol=TOL)
                for i, c in enumerate(comps):
                    again = isotypic_decompose_perm(n, c.values, sepset)
                    assert np.allclose(again[i].values, c.values, atol=TOL)
                    for op in ops:
                        assert np.allclose(op.apply(c.values), eigen[c.tree][op.tree] * c.values, atol=TOL)
                    for d in comps[i + 1:]:
                        assert abs(np.vdot(c.values, d.values)) < TOL * max(1.0, np.vdot(x, x).real)
                # the components coincide with the Haar levels as subspaces
                levels = haar_levels(x)
                assert sorted(
                    next(j for j, lv in enumerate(levels) if np.allclose(lv, c.values, atol=TOL)) for c in comps
                ) == list(range(n + 1))
            assert sorted(match_isotypics_to_haar(n).values()) == list(range(n + 1))


def test_08_regular_projection():
    with criterion("8 group-algebra projector traces and delta signals (n <= 3)"):
        for n in (1, 2, 3):
            projs = regular_projectors(n)
            for w, p in projs.items():
                assert abs(np.trace(p) - expected_projector_trace(w)) < TOL
            size = group_order(n)
            for pos in (0, size - 1):
                delta = np.zeros(size)
                delta[pos] = 1
                comps = isotypic_decompose_regular(n, delta)
                assert np.allclose(sum(c.values for c in comps), delta, atol=TOL)


def test_09_cyclic_fft():
    with criterion("9 eigenspace DFT against the naive DFT, lengths 2..1024"):
        rng = np.random.default_rng(9)
        ratios = []
        for m in range(1, 11):
            size = 2**m
            x = rng.normal(size=size) + 1j * rng.normal(size=size)
            counter = OpCounter()
            got = eigenspace_dft(x, counter)
            ref = naive_dft(x)
            assert np.linalg.norm(got - ref) <= TOL * np.linalg.norm(ref)
            ratios.append(counter.butterflies / (size * m))
        # butterflies / (N log2 N) stays constant, so the count is Theta(N log N)
        assert max(ratios) - min(ratios) < 1e-12


def random_mtc(rng):
    a = int(rng.integers(1, 7))
    tests = tuple(
        frozenset(np.flatnonzero(rng.integers(0, 2, a)).tolist()) for _ in range(int(rng.integers(0, 7)))
    )
    return MTCInstance(a, tests, int(rng.integers(0, a + 1)))


def test_10_np_reduction():
    with criterion("10 MTC reduction equisatisfiable (exhaustive |A|,|tests| <= 4 plus 200 random)"):
        checked = 0
        for a in range(1, 5):
            subsets = [frozenset(s) for k in range(a + 1) for s in itertools.combinations(range(a), k)]
            for t in range(5):
                for tests in itertools.combinations_with_replacement(subsets, t):
                    for j in range(a + 1):
                        m = MTCInstance(a, tests, j)
                        assert brute_force_mtc(m) == sepset_solvable(*mtc_to_sepset(m))
                        checked += 1
        rng = np.random.default_rng(10)
        for _ in range(200):
            m = random_mtc(rng)
            assert brute_force_mtc(m) == sepset_solvable(*mtc_to_sepset(m))
        print(f"\n      {checked} exhaustive instances")
