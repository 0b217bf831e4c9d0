import warnings

import pytest

from reference_data import W2_CLASSES, W3_CLASSES, W4_GREEDY_SET
from treewreath.conjugacy import bucket_oracle, class_members, class_representative, class_size, classes
from treewreath.errors import SizeLimitError
from treewreath.rtree import count_rtrees, enumerate_rtrees, parse_tree, tree_invariant
from treewreath.wreath import (
    LeafPermutation,
    conjugate,
    enumerate_group,
    from_leaf_permutation,
    group_order,
    random_element,
    to_leaf_permutation,
)


def quiet_parse(text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return parse_tree(text)


@pytest.mark.parametrize("table,n", [(W2_CLASSES, 2), (W3_CLASSES, 3)])
def test_representatives_bit_exact(table, n):
    for _, cycles, tree in table:
        rep = class_representative(quiet_parse(tree))
        assert to_leaf_permutation(rep) == LeafPermutation.from_cycles(cycles, 2**n)


@pytest.mark.parametrize("table,n", [(W2_CLASSES, 2), (W3_CLASSES, 3), (W4_GREEDY_SET, 4)])
def test_listed_representatives_have_listed_trees(table, n):
    for _, cycles, tree in table:
        x = from_leaf_permutation(LeafPermutation.from_cycles(cycles, 2**n))
        assert tree_invariant(x) == quiet_parse(tree)


def test_height_two_sizes():
    assert [c.size for c in classes(2)] == [1, 2, 1, 2, 2]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bucket_oracle(n):
    buckets = bucket_oracle(n)
    assert len(buckets) == count_rtrees(n)
    assert sum(buckets.values()) == group_order(n)
    assert all(buckets[c.tree] == c.size for c in classes(n))


def test_bucket_oracle_ceiling():
    with pytest.raises(SizeLimitError):
        bucket_oracle(5)


def test_class_size_beyond_enumeration():
    assert sum(class_size(t) for t in enumerate_rtrees(5)) == group_order(5)


@pytest.mark.parametrize("n", [1, 2])
def test_invariant_constant_on_orbits_exhaustive(n):
    group = enumerate_group(n)
    for x in group:
        t = tree_invariant(x)
        assert all(tree_invariant(conjugate(g, x)) == t for g in group)


def test_invariant_constant_on_orbits_sampled(rng):
    for _ in range(300):
        x, g = random_element(3, rng), random_element(3, rng)
        assert tree_invariant(conjugate(g, x)) == tree_invariant(x)


def test_orbit_of_representative_is_its_class():
    # independent route: closure under conjugation, not the invariant
    group = enumerate_group(3)
    members = class_members(3)
    for c in classes(3):
        orbit = {conjugate(g, c.representative) for g in group}
        assert orbit == set(members[c.tree])


def test_representatives_lie_in_class():
    for c in classes(4):
        assert tree_invariant(c.representative) == c.tree


def test_cycle_notation_consistent():
    for c in classes(3):
        perm = LeafPermutation.from_cycles(c.cycle_notation, 8)
        assert perm == to_leaf_permutation(c.representative)
