"""Itemset counting: exact pair counts and level-wise Apriori mining."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Sequence

from .txdb import TransactionDB


def as_fraction(value) -> Fraction:
    """Exact rational for a threshold given as int, Fraction, str or float.

    Floats go through their shortest repr, so ``0.1`` means one tenth rather
    than the nearest binary double.
    """
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"threshold must be finite, got {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a fraction")


def check_unit_interval(value, name: str) -> Fraction:
    frac = as_fraction(value)
    if not 0 <= frac <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return frac


def meets(count: int, total: int, threshold: Fraction) -> bool:
    """``count / total >= threshold`` in integer arithmetic."""
    return count * threshold.denominator >= threshold.numerator * total


@dataclass(frozen=True)
class ItemsetCount:
    itemset: tuple[str, ...]
    count: int
    n_total: int

    def __post_init__(self):
        if not self.itemset:
            raise ValueError("itemset must be non-empty")
        if tuple(sorted(set(self.itemset))) != self.itemset:
            raise ValueError(f"itemset must be sorted and duplicate-free: {self.itemset!r}")
        if not 0 <= self.count <= self.n_total:
            raise ValueError(f"count {self.count} outside [0, {self.n_total}]")

    @property
    def support(self) -> float:
        return self.count / self.n_total

    @property
    def size(self) -> int:
        return len(self.itemset)

    def sort_key(self):
        return (len(self.itemset), self.itemset)


@dataclass(frozen=True)
class MiningConfig:
    min_support: Fraction | float = Fraction(0)
    max_itemset_size: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "min_support", check_unit_interval(self.min_support, "min_support"))
        if self.max_itemset_size is not None and self.max_itemset_size < 1:
            raise ValueError("max_itemset_size must be a positive integer or None")


def pair_counts(db: TransactionDB) -> list[ItemsetCount]:
    """Every co-occurring unordered pair with its count, sorted by pair."""
    counts: Counter = Counter()
    for tx in db.transactions:
        counts.update(combinations(sorted(tx), 2))
    return [ItemsetCount(pair, n, db.n_total) for pair, n in sorted(counts.items())]


def count_candidates(
    transactions: Iterable[frozenset[str]], candidates: Sequence[tuple[str, ...]]
) -> Counter:
    """Occurrences of each candidate in ``transactions`` (subset test).

    Results for disjoint chunks of transactions add up, so callers may
    partition the data and merge the Counters.
    """
    counts: Counter = Counter()
    by_size: dict[int, list[tuple[str, ...]]] = {}
    for cand in candidates:
        by_size.setdefault(len(cand), []).append(cand)
    for tx in transactions:
        for size, group in by_size.items():
            if len(tx) < size:
                continue
            for cand in group:
                if tx.issuperset(cand):
                    counts[cand] += 1
    return counts


def _join(frequent: list[tuple[str, ...]]) -> list[tuple[str, ...]]:
    """Candidate (k+1)-itemsets from sorted frequent k-itemsets.

    Joins pairs sharing a (k-1)-prefix, then drops candidates with any
    infrequent k-subset.
    """
    known = set(frequent)
    out = []
    for i, left in enumerate(frequent):
        for right in frequent[i + 1:]:
            if left[:-1] != right[:-1]:
                break
            cand = left + right[-1:]
            if all(sub in known for sub in combinations(cand, len(cand) - 1)):
                out.append(cand)
    return out


def apriori(db: TransactionDB, cfg: MiningConfig = MiningConfig()) -> list[ItemsetCount]:
    """All itemsets with support >= ``cfg.min_support`` and count >= 1.

    Output is sorted by (size, itemset). Zero-count itemsets are never
    reported, even with ``min_support == 0``.
    """
    n = db.n_total
    if n == 0:
        return []
    limit = cfg.max_itemset_size or math.inf

    def keep(count):
        return count >= 1 and meets(count, n, cfg.min_support)

    singles = count_candidates(db.transactions, [(code,) for code in db.universe])
    level = sorted(c for c, k in singles.items() if keep(k))
    result = [ItemsetCount(c, singles[c], n) for c in level]

    size = 1
    while level and size < limit:
        candidates = _join(level)
        if not candidates:
            break
        counts = count_candidates(db.transactions, candidates)
        level = [c for c in candidates if keep(counts[c])]
        result.extend(ItemsetCount(c, counts[c], n) for c in level)
        size += 1

    result.sort(key=ItemsetCount.sort_key)
    return result
