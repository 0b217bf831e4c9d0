"""Labeled trees indexing both irreducibles and conjugacy classes of W_n.

A tree of height 1 is a bare label.  A taller tree is a root label over a
tuple of children of one smaller height.  For binary trees (r = 2) the
label may be 1 only when both children are equal, and the children of a
canonical tree are sorted ascending.

Trees are ordered by (height, label, children), children compared in turn.

The general r-ary form (r children, labels ranging over the stabilizer of
the child tuple under cyclic rotation) is provided for enumeration only.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import SizeLimitError
from .wreath import Element, multiply

ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True, order=True)
class RTree:
    height: int
    label: int
    children: tuple["RTree", ...] = ()

    def __post_init__(self):
        if self.height == 1 and self.children:
            raise ValueError("a height-1 tree has no children")
        if self.height > 1:
            if not self.children:
                raise ValueError("inner node needs children")
            if any(c.height != self.height - 1 for c in self.children):
                raise ValueError("children must have height one less than the parent")

    @classmethod
    def leaf(cls, label: int) -> "RTree":
        return cls(1, label)

    @classmethod
    def node(cls, label: int, *children: "RTree") -> "RTree":
        return cls(children[0].height + 1, label, tuple(children))

    @property
    def is_leaf(self) -> bool:
        return self.height == 1

    @property
    def a(self) -> "RTree":
        return self.children[0]

    @property
    def b(self) -> "RTree":
        return self.children[1]

    @cached_property
    def _hash(self) -> int:
        return hash((self.height, self.label, self.children))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return format_tree(self)

    def __repr__(self):
        return f"RTree({format_tree(self)!r})"


def leaf(label: int) -> RTree:
    return RTree.leaf(label)


def node(label: int, *children: RTree) -> RTree:
    return RTree.node(label, *children)


def zero_tree(n: int) -> RTree:
    """The all-zero tree: trivial irreducible / identity class."""
    t = leaf(0)
    for _ in range(n - 1):
        t = node(0, t, t)
    return t


def _min_rotation(children: tuple[RTree, ...]) -> tuple[RTree, ...]:
    return min(children[i:] + children[:i] for i in range(len(children)))


def _stabilizer_order(children: tuple[RTree, ...]) -> int:
    r = len(children)
    return sum(1 for i in range(r) if children[i:] + children[:i] == children)


def is_canonical(t: RTree) -> bool:
    if t.is_leaf:
        return True
    ch = t.children
    if not all(is_canonical(c) for c in ch):
        return False
    if len(ch) == 2:
        return ch[0] <= ch[1] and (t.label == 0 or ch[0] == ch[1])
    return ch == _min_rotation(ch) and t.label < _stabilizer_order(ch)


def canonicalize(t: RTree) -> RTree:
    if t.is_leaf:
        return t
    ch = tuple(canonicalize(c) for c in t.children)
    ch = tuple(sorted(ch)) if len(ch) == 2 else _min_rotation(ch)
    out = RTree(t.height, t.label, ch)
    if t.label >= _stabilizer_order(ch):
        raise ValueError(f"label {t.label} not allowed over children {[str(c) for c in ch]}")
    return out


def enumerate_rtrees(n: int, r: int = 2) -> list[RTree]:
    """All canonical r-trees of height n in ascending order."""
    if n < 1:
        raise ValueError(f"height must be at least 1, got {n}")
    if r < 2:
        raise ValueError("r must be at least 2")
    total = count_rtrees(n, r)
    if total > ENUMERATION_LIMIT:
        raise SizeLimitError(f"{total} trees of height {n} exceed the listing limit {ENUMERATION_LIMIT}")
    return list(_enumerate(n, r))


@lru_cache(maxsize=None)
def _enumerate(n: int, r: int) -> tuple[RTree, ...]:
    if n == 1:
        return tuple(leaf(i) for i in range(r))
    below = _enumerate(n - 1, r)
    out = []
    if r == 2:
        for i, a in enumerate(below):
            for b in below[i:]:
                for label in (0, 1) if a == b else (0,):
                    out.append(RTree(n, label, (a, b)))
    else:
        for ch in _necklaces(below, r):
            for label in range(_stabilizer_order(ch)):
                out.append(RTree(n, label, ch))
    out.sort()
    return tuple(out)


def _necklaces(items: tuple[RTree, ...], r: int):
    """Canonical (minimal-rotation) r-tuples over ``items``."""
    def rec(prefix):
        if len(prefix) == r:
            if prefix == _min_rotation(prefix):
                yield prefix
            return
        for it in items:
            # a minimal rotation never starts with something larger than its first entry
            if prefix and it < prefix[0]:
                continue
            yield from rec(prefix + (it,))

    yield from rec(())


def count_rtrees(n: int, r: int = 2) -> int:
    """Number of r-trees of height n, from the recurrence on heights."""
    if n < 1:
        raise ValueError(f"height must be at least 1, got {n}")
    k = r
    for _ in range(n - 1):
        if r == 2:
            k = (k * k + 3 * k) // 2
        else:
            k = _labeled_necklaces(k, r)
    return k


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _mobius(m: int) -> int:
    result, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def _labeled_necklaces(k: int, r: int) -> int:
    # orbits of exact period m contribute r/m labels each
    total = 0
    for m in _divisors(r):
        primitive = sum(_mobius(m // e) * k**e for e in _divisors(m))
        total += (primitive // m) * (r // m)
    return total


def irrep_dim(t: RTree) -> int:
    """Dimension of the irreducible indexed by a binary tree."""
    if t.is_leaf:
        return 1
    if len(t.children) != 2:
        raise ValueError("dimensions are defined for binary trees only")
    a, b = t.children
    if a == b:
        return irrep_dim(a) ** 2
    return 2 * irrep_dim(a) * irrep_dim(b)


@lru_cache(maxsize=1 << 18)
def tree_invariant(x: Element) -> RTree:
    """Tree of the conjugacy class containing ``x``."""
    if x.is_leaf:
        return leaf(x.swap)
    if x.swap == 0:
        a, b = sorted((tree_invariant(x.left), tree_invariant(x.right)))
        return RTree(x.height, 0, (a, b))
    t = tree_invariant(multiply(x.left, x.right))
    return RTree(x.height, 1, (t, t))


def format_tree(t: RTree) -> str:
    if t.is_leaf:
        return str(t.label)
    return "(" + " ".join([str(t.label)] + [format_tree(c) for c in t.children]) + ")"


_TOKEN = re.compile(r"\(|\)|\d+")


def parse_tree(text: str) -> RTree:
    """Parse the s-expression form, e.g. ``"(0 (0 1 1) (1 0 0))"``.

    Non-canonical child order is accepted with a warning and fixed.
    """
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise ValueError(f"unexpected characters in tree text: {text!r}")
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree text")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens) or not tokens[pos].isdigit():
                raise ValueError("expected a label after '('")
            label = int(tokens[pos])
            pos += 1
            children = []
            while pos < len(tokens) and tokens[pos] != ")":
                children.append(parse())
            if pos >= len(tokens):
                raise ValueError("unbalanced parentheses")
            pos += 1
            if len(children) < 2:
                raise ValueError("an inner node needs at least two children")
            return RTree.node(label, *children)
        if tok == ")":
            raise ValueError("unbalanced parentheses")
        return leaf(int(tok))

    raw = parse()
    if pos != len(tokens):
        raise ValueError("trailing input after tree")
    out = canonicalize(raw)
    if out != raw:
        warnings.warn(f"non-canonical tree {text!r} read as {format_tree(out)!r}", stacklevel=2)
    return out
