"""Separating sets: column subsets that tell every pair of rows apart.

Includes exhaustive minimum search, the greedy heuristic, and the reduction
from MINIMUM TEST COLLECTION with an independent brute-force solver for the
source problem.
"""

from __future__ import annotations

import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional, Sequence

import numpy as np

from .errors import BudgetExceededError, NotSeparableError

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_BUDGET = 10**8
BUDGET_ENV = "TREEWREATH_SUBSET_BUDGET"


def subset_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_SUBSET_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


@dataclass(frozen=True)
class SepInstance:
    """A rectangular matrix of exactly comparable entries."""

    entries: tuple[tuple[Any, ...], ...]
    col_labels: Optional[tuple[Any, ...]] = None
    codes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows:
            raise ValueError("an instance needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("instance must be rectangular")
        if self.col_labels is not None and len(self.col_labels) != width:
            raise ValueError("one label per column")
        object.__setattr__(self, "entries", rows)
        # per-column integer codes; equal codes iff equal exact values
        codes = np.zeros((len(rows), width), dtype=np.int64)
        for j in range(width):
            seen: dict = {}
            for i, r in enumerate(rows):
                codes[i, j] = seen.setdefault(r[j], len(seen))
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return self.codes.shape[1]


def is_separating(inst: SepInstance, columns: Sequence[int]) -> bool:
    cols = list(columns)
    for c in cols:
        if not 0 <= c < inst.n_cols:
            raise IndexError(f"column {c} out of range 0..{inst.n_cols - 1}")
    if inst.n_rows == 1:
        return True
    if not cols:
        return False
    sub = inst.codes[:, cols]
    return len(np.unique(sub, axis=0)) == inst.n_rows


def undistinguished_pairs(inst: SepInstance, columns: Sequence[int]) -> list[tuple[int, int]]:
    sub = inst.codes[:, list(columns)]
    return [
        (i, k)
        for i, k in itertools.combinations(range(inst.n_rows), 2)
        if np.array_equal(sub[i], sub[k])
    ]


class MinimalSets(NamedTuple):
    k: Optional[int]
    sets: list[tuple[int, ...]]


def _search_level(codes: np.ndarray, k: int, firsts: Sequence[int]) -> list[tuple[int, ...]]:
    n_rows, n_cols = codes.shape
    found = []
    # mixed-radix packing: distinct signatures <=> distinct packed keys
    radix = codes.max(axis=0) + 1
    for first in firsts:
        for rest in itertools.combinations(range(first + 1, n_cols), k - 1):
            cols = (first,) + rest
            prod = 1
            for c in cols:
                prod *= int(radix[c])
            if prod < n_rows:
                continue
            if prod < 2**62:
                key = np.zeros(n_rows, dtype=np.int64)
                for c in cols:
                    key = key * radix[c] + codes[:, c]
                if len(np.unique(key)) == n_rows:
                    found.append(cols)
            elif len(np.unique(codes[:, cols], axis=0)) == n_rows:
                found.append(cols)
    return found


def brute_force_minimal(
    inst: SepInstance,
    max_k: Optional[int] = None,
    budget: Optional[int] = None,
    workers: int = 1,
) -> MinimalSets:
    """Smallest separating size and every separating set of that size.

    Sizes are tried in increasing order.  Returns ``MinimalSets(None, [])`` when
    nothing up to ``max_k`` separates; raises BudgetExceededError before
    visiting more than ``budget`` subsets in total.
    """
    budget = subset_budget() if budget is None else budget
    max_k = inst.n_cols if max_k is None else min(max_k, inst.n_cols)
    if inst.n_rows == 1:
        return MinimalSets(0, [()])
    if not is_separating(inst, range(inst.n_cols)):
        raise NotSeparableError("some rows agree on every column")
    visited = 1
    for k in range(1, max_k + 1):
        visited += math.comb(inst.n_cols, k)
        if visited > budget:
            raise BudgetExceededError(
                f"searching subsets up to size {k} of {inst.n_cols} columns visits {visited:.3g} "
                f"subsets, over the budget of {budget:.3g}; this instance is not susceptible to "
                f"brute force (use the greedy method, or raise {BUDGET_ENV})"
            )
        firsts = range(inst.n_cols - k + 1)
        if workers > 1:
            chunks = [firsts[i::workers] for i in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(_search_level, [inst.codes] * workers, [k] * workers, chunks)
                found = sorted(itertools.chain.from_iterable(parts))
        else:
            found = _search_level(inst.codes, k, firsts)
        logger.debug("size %d: %d separating sets", k, len(found))
        if found:
            return MinimalSets(k, sorted(found))
    return MinimalSets(None, [])


def greedy_order(inst: SepInstance) -> list[tuple[int, int]]:
    """The greedy picks in order, each with the number of pairs it newly separates."""
    if inst.n_rows == 1:
        return []
    i_idx, k_idx = np.triu_indices(inst.n_rows, k=1)
    differs = inst.codes[i_idx] != inst.codes[k_idx]
    remaining = np.ones(len(i_idx), dtype=bool)
    picks = []
    while remaining.any():
        gains = differs[remaining].sum(axis=0)
        best = int(np.argmax(gains))
        if gains[best] == 0:
            raise NotSeparableError("some rows agree on every column")
        picks.append((best, int(gains[best])))
        remaining &= ~differs[:, best]
    return picks


def greedy(inst: SepInstance) -> tuple[int, ...]:
    """Repeatedly take the column separating the most remaining row pairs.

    Ties go to the lowest column index.  Returned sorted.
    """
    return tuple(sorted(c for c, _ in greedy_order(inst)))


# minimum test collection ---------------------------------------------------


@dataclass(frozen=True)
class MTCInstance:
    """Elements 0..universe-1, candidate tests (subsets), and a size bound."""

    universe: int
    tests: tuple[frozenset, ...]
    budget: int

    def __post_init__(self):
        if self.universe < 1:
            raise ValueError("universe must be non-empty")
        tests = tuple(frozenset(t) for t in self.tests)
        for t in tests:
            if any(not 0 <= a < self.universe for a in t):
                raise ValueError(f"test {sorted(t)} names elements outside the universe")
        if not 0 <= self.budget <= self.universe:
            raise ValueError("budget J must satisfy 0 <= J <= |A|")
        object.__setattr__(self, "tests", tests)

    @classmethod
    def from_json(cls, data: dict) -> "MTCInstance":
        return cls(int(data["universe"]), tuple(frozenset(t) for t in data["tests"]), int(data["budget"]))

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "tests": [sorted(t) for t in self.tests],
            "budget": self.budget,
        }


def mtc_to_sepset(m: MTCInstance) -> tuple[SepInstance, int]:
    """Incidence matrix b_ij = [a_i in C_j] with k = J."""
    rows = tuple(tuple(int(a in t) for t in m.tests) for a in range(m.universe))
    return SepInstance(rows), m.budget


def brute_force_mtc(m: MTCInstance, budget: Optional[int] = None) -> bool:
    """Is there a sub-collection of at most J tests splitting every pair?"""
    budget = subset_budget() if budget is None else budget
    pairs = list(itertools.combinations(range(m.universe), 2))
    total = sum(math.comb(len(m.tests), j) for j in range(min(m.budget, len(m.tests)) + 1))
    if total > budget:
        raise BudgetExceededError(f"{total} sub-collections exceed the budget of {budget}")
    for size in range(min(m.budget, len(m.tests)) + 1):
        for sub in itertools.combinations(m.tests, size):
            if all(any(len({a1, a2} & s) == 1 for s in sub) for a1, a2 in pairs):
                return True
    return False


def sepset_solvable(inst: SepInstance, k: int, budget: Optional[int] = None) -> bool:
    """Does a separating set of at most k columns exist?"""
    try:
        result = brute_force_minimal(inst, max_k=k, budget=budget)
    except NotSeparableError:
        return False
    return result.k is not None
