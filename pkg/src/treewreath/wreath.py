"""Elements of W_n = Z_2 wr ... wr Z_2 and their action on tree leaves.

An element of height 1 is a single bit (swap the two leaves or not).  An
element of height n > 1 is a triple ``(left, right, swap)``: apply ``left``
inside the left subtree, ``right`` inside the right subtree, then exchange
the two subtrees when ``swap`` is 1.

Products compose right to left, like permutations: ``multiply(x, y)`` is
"apply y, then x".
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import SizeLimitError

MAX_ENUMERATION_HEIGHT = 4


@dataclass(frozen=True)
class Element:
    """A tree automorphism in recursive triple form."""

    swap: int
    left: Optional["Element"] = None
    right: Optional["Element"] = None

    def __post_init__(self):
        if self.swap not in (0, 1):
            raise ValueError(f"swap bit must be 0 or 1, got {self.swap!r}")
        if (self.left is None) != (self.right is None):
            raise ValueError("an inner element needs both halves")
        if self.left is not None and self.left.height != self.right.height:
            raise ValueError("halves must have equal height")

    @cached_property
    def height(self) -> int:
        return 1 if self.left is None else self.left.height + 1

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def part(self, side: int) -> "Element":
        """The half applied to points that start on ``side`` (0 = left)."""
        return self.left if side == 0 else self.right

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __repr__(self):
        if self.is_leaf:
            return f"L{self.swap}"
        return f"({self.left!r}, {self.right!r}, {self.swap})"


def group_order(n: int) -> int:
    """|W_n| = 2^(2^n - 1)."""
    if n < 1:
        raise ValueError("height must be at least 1")
    return 2 ** (2**n - 1)


@lru_cache(maxsize=None)
def identity(n: int) -> Element:
    if n < 1:
        raise ValueError(f"height must be at least 1, got {n}")
    if n == 1:
        return Element(0)
    half = identity(n - 1)
    return Element(0, half, half)


def generator(n: int, depth: int, index: int) -> Element:
    """The swap at node ``index`` (left to right) on level ``depth``.

    Level 0 is the root.  Together these generate W_n.
    """
    if not 0 <= depth < n or not 0 <= index < 2**depth:
        raise ValueError("no such node")
    if n == 1:
        return Element(1)
    if depth == 0:
        half = identity(n - 1)
        return Element(1, half, half)
    width = 2 ** (depth - 1)
    inner = generator(n - 1, depth - 1, index % width)
    if index < width:
        return Element(0, inner, identity(n - 1))
    return Element(0, identity(n - 1), inner)


def _check_heights(x: Element, y: Element) -> None:
    if x.height != y.height:
        raise ValueError(f"height mismatch: {x.height} vs {y.height}")


def multiply(x: Element, y: Element) -> Element:
    """The product x*y, acting on leaves as y first, then x."""
    _check_heights(x, y)
    return _mul(x, y)


@lru_cache(maxsize=1 << 16)
def _mul(x: Element, y: Element) -> Element:
    if x.is_leaf:
        return Element(x.swap ^ y.swap)
    # a point starting on side s lands on side s ^ y.swap before x acts
    left = _mul(x.part(y.swap), y.left)
    right = _mul(x.part(1 ^ y.swap), y.right)
    return Element(x.swap ^ y.swap, left, right)


@lru_cache(maxsize=1 << 16)
def inverse(x: Element) -> Element:
    if x.is_leaf:
        return x
    a, b = inverse(x.left), inverse(x.right)
    if x.swap:
        a, b = b, a
    return Element(x.swap, a, b)


def conjugate(g: Element, x: Element) -> Element:
    """g x g^-1."""
    return multiply(multiply(g, x), inverse(g))


def power(x: Element, k: int) -> Element:
    result = identity(x.height)
    for _ in range(k):
        result = _mul(result, x)
    return result


def enumerate_group(n: int) -> list[Element]:
    """All 2^(2^n - 1) elements, ordered by (left, right, swap)."""
    if n < 1:
        raise ValueError(f"height must be at least 1, got {n}")
    if n > MAX_ENUMERATION_HEIGHT:
        raise SizeLimitError(
            f"enumerating W_{n} is not supported: the ceiling is n <= {MAX_ENUMERATION_HEIGHT} "
            f"(|W_{n}| = {group_order(n)})"
        )
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Element, ...]:
    if n == 1:
        return (Element(0), Element(1))
    halves = _enumerate(n - 1)
    return tuple(
        Element(z, a, b) for a, b, z in itertools.product(halves, halves, (0, 1))
    )


def leaf_images(x: Element) -> np.ndarray:
    """Zero-based image of every leaf, as an integer array of length 2^n."""
    return _leaf_images(x).copy()


@lru_cache(maxsize=1 << 16)
def _leaf_images(x: Element) -> np.ndarray:
    if x.is_leaf:
        out = np.array([1, 0] if x.swap else [0, 1], dtype=np.int64)
    else:
        half = 2 ** (x.height - 1)
        a = _leaf_images(x.left)
        b = _leaf_images(x.right)
        if x.swap:
            out = np.concatenate([a + half, b])
        else:
            out = np.concatenate([a, b + half])
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class LeafPermutation:
    """A permutation of leaves 1..2^n, stored as one-based images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("images must be a bijection on 1..N")

    @classmethod
    def from_zero_based(cls, images: Sequence[int]) -> "LeafPermutation":
        return cls(tuple(int(i) + 1 for i in images))

    @classmethod
    def from_cycles(cls, text: str, size: int) -> "LeafPermutation":
        """Parse cycle notation such as ``"(1 4 2 3)"``; ``"()"`` is the identity."""
        images = list(range(1, size + 1))
        for body in re.findall(r"\(([^()]*)\)", text):
            points = [int(p) for p in re.split(r"[\s,:\\]+", body.strip()) if p]
            for i, p in enumerate(points):
                images[p - 1] = points[(i + 1) % len(points)]
        return cls(tuple(images))

    def __len__(self):
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def compose(self, other: "LeafPermutation") -> "LeafPermutation":
        """self after other."""
        if len(self) != len(other):
            raise ValueError("size mismatch")
        return LeafPermutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "LeafPermutation":
        out = [0] * len(self)
        for i, j in enumerate(self.images, start=1):
            out[j - 1] = i
        return LeafPermutation(tuple(out))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        result = []
        for start in range(1, len(self) + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            result.append(tuple(cycle))
        return result

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images, start=1) if i == j)

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def to_leaf_permutation(x: Element) -> LeafPermutation:
    return LeafPermutation.from_zero_based(_leaf_images(x))


def from_leaf_permutation(perm: LeafPermutation) -> Element:
    """Recover the triple form of a leaf permutation that preserves the tree."""
    size = len(perm)
    n = size.bit_length() - 1
    if size != 2**n or n < 1:
        raise ValueError("permutation size must be a power of two >= 2")
    return _from_images(tuple(i - 1 for i in perm.images))


def _from_images(images: tuple[int, ...]) -> Element:
    size = len(images)
    if size == 2:
        if sorted(images) != [0, 1]:
            raise ValueError("not a tree automorphism")
        return Element(int(images[0] == 1))
    half = size // 2
    swap = int(images[0] >= half)
    left = images[:half]
    right = images[half:]
    offset_left = half if swap else 0
    offset_right = 0 if swap else half
    if any(not offset_left <= i < offset_left + half for i in left) or any(
        not offset_right <= i < offset_right + half for i in right
    ):
        raise ValueError("not a tree automorphism")
    return Element(
        swap,
        _from_images(tuple(i - offset_left for i in left)),
        _from_images(tuple(i - offset_right for i in right)),
    )


def random_element(n: int, rng: np.random.Generator) -> Element:
    if n == 1:
        return Element(int(rng.integers(2)))
    return Element(int(rng.integers(2)), random_element(n - 1, rng), random_element(n - 1, rng))
