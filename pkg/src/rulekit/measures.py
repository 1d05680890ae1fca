"""Interestingness measures for association rules.

All measures are computed from exact integer counts and divided once, so a
value depends only on ``count(X ∪ Y)``, ``count(X)``, ``count(Y)`` and ``N``.
Zero denominators raise rather than returning NaN or 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Iterable

from .errors import (
    EmptyDatabase,
    UndefinedConfidence,
    UndefinedCosine,
    UndefinedLift,
    UnknownItem,
    UnknownMeasure,
)
from .txdb import TransactionDB


def _itemset(value) -> frozenset[str]:
    if isinstance(value, str):
        return frozenset((value,))
    return frozenset(value)


def format_itemset(codes: Iterable[str]) -> str:
    return ",".join(sorted(codes))


@dataclass(frozen=True)
class Rule:
    """Directed implication ``antecedent -> consequent``.

    Either side may be given as a single code or an iterable of codes.
    """

    antecedent: frozenset[str]
    consequent: frozenset[str]

    def __post_init__(self):
        x, y = _itemset(self.antecedent), _itemset(self.consequent)
        if not x or not y:
            raise ValueError("rule sides must be non-empty")
        if x & y:
            raise ValueError(f"rule sides overlap on {format_itemset(x & y)}")
        object.__setattr__(self, "antecedent", x)
        object.__setattr__(self, "consequent", y)

    @property
    def items(self) -> frozenset[str]:
        return self.antecedent | self.consequent

    def reversed(self) -> "Rule":
        return Rule(self.consequent, self.antecedent)

    def label(self, arrow: str = "→") -> str:
        return f"{format_itemset(self.antecedent)}{arrow}{format_itemset(self.consequent)}"

    def sort_key(self):
        return (tuple(sorted(self.antecedent)), tuple(sorted(self.consequent)))

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class MeasureSet:
    """Scores of one rule. Fields left as None were not requested."""

    s: float | None = None
    alpha: float | None = None
    cosine: float | None = None
    lift: float | None = None

    def populated(self) -> dict[str, float]:
        """Requested measures keyed by registry name, in registry order."""
        out = {}
        for name, attr in MEASURE_FIELDS.items():
            value = getattr(self, attr)
            if value is not None:
                out[name] = value
        return out

    def get(self, name: str) -> float | None:
        if name not in MEASURE_FIELDS:
            raise UnknownMeasure(name)
        return getattr(self, MEASURE_FIELDS[name])

    def __bool__(self):
        return any(getattr(self, f.name) is not None for f in fields(self))


def _check_known(db: TransactionDB, codes: Iterable[str]) -> None:
    if all(code in db for code in codes):
        return
    for code in sorted(codes):
        if code not in db:
            raise UnknownItem(code)


def rule_counts(db: TransactionDB, r: Rule) -> tuple[int, int, int, int]:
    """``(count(X ∪ Y), count(X), count(Y), N)`` for rule ``r``."""
    _check_known(db, r.items)
    return db.count(r.items), db.count(r.antecedent), db.count(r.consequent), db.n_total


def _support(r, both, cx, cy, n):
    if n == 0:
        raise EmptyDatabase()
    return both / n


def _confidence(r, both, cx, cy, n):
    if cx == 0:
        raise UndefinedConfidence(f"antecedent {format_itemset(r.antecedent)} never occurs")
    return both / cx


def _cosine(r, both, cx, cy, n):
    if cx == 0 or cy == 0:
        missing = format_itemset(r.antecedent if cx == 0 else r.consequent)
        raise UndefinedCosine(f"itemset {missing} never occurs")
    return both / math.sqrt(cx * cy)


def _lift(r, both, cx, cy, n):
    if n == 0:
        raise EmptyDatabase()
    if cx == 0:
        raise UndefinedConfidence(f"antecedent {format_itemset(r.antecedent)} never occurs")
    if cy == 0:
        raise UndefinedLift(f"consequent {format_itemset(r.consequent)} never occurs")
    return (n * both) / (cx * cy)


def support(db: TransactionDB, r: Rule) -> float:
    """Fraction of transactions containing ``X ∪ Y``."""
    return _support(r, *rule_counts(db, r))


def confidence(db: TransactionDB, r: Rule) -> float:
    """``count(X ∪ Y) / count(X)``."""
    return _confidence(r, *rule_counts(db, r))


def cosine(db: TransactionDB, x, y) -> float:
    """``count(X ∪ Y) / sqrt(count(X) * count(Y))``; symmetric in X and Y.

    This equals P(X,Y)/sqrt(P(X)P(Y)) with N cancelled, so transactions that
    contain neither side do not affect it.
    """
    r = Rule(x, y)
    return _cosine(r, *rule_counts(db, r))


def lift(db: TransactionDB, r: Rule) -> float:
    """``N * count(X ∪ Y) / (count(X) * count(Y))``; 1 under independence."""
    return _lift(r, *rule_counts(db, r))


# name -> formula over (rule, count(X ∪ Y), count(X), count(Y), N)
MEASURES = {
    "support": _support,
    "confidence": _confidence,
    "cosine": _cosine,
    "lift": _lift,
}
MEASURE_FIELDS = {"support": "s", "confidence": "alpha", "cosine": "cosine", "lift": "lift"}
DEFAULT_MEASURES = ("support", "confidence", "cosine")


def check_measure_names(which: Iterable[str]) -> tuple[str, ...]:
    """Validate ``which`` and return it in registry order."""
    which = set(which)
    for name in sorted(which):
        if name not in MEASURES:
            raise UnknownMeasure(name)
    return tuple(name for name in MEASURES if name in which)


def evaluate(db: TransactionDB, r: Rule, which: Iterable[str] = DEFAULT_MEASURES) -> MeasureSet:
    """Compute the named measures for ``r``; measures are evaluated in registry order."""
    names = check_measure_names(which)
    if not names:
        return MeasureSet()
    return measures_from_counts(r, rule_counts(db, r), names)


def measures_from_counts(r: Rule, counts: tuple[int, int, int, int], names) -> MeasureSet:
    """MeasureSet for ``r`` from precomputed :func:`rule_counts` output."""
    return MeasureSet(**{MEASURE_FIELDS[name]: MEASURES[name](r, *counts) for name in names})
