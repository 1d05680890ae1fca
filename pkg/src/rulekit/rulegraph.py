"""Thresholded pair rules, the undirected relation graph, and hub ranking."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import OutOfRange
from .measures import (
    DEFAULT_MEASURES,
    MeasureSet,
    Rule,
    check_measure_names,
    measures_from_counts,
    rule_counts,
)
from .mine import ItemsetCount, check_unit_interval, meets
from .txdb import TransactionDB, item_counts

STRONG = "strong"
WEAK = "weak"
DEFAULT_STRONG_THRESHOLD = 0.5


@dataclass(frozen=True)
class ScoredRule:
    rule: Rule
    measures: MeasureSet

    def __post_init__(self):
        if self.measures.s is None or self.measures.alpha is None:
            raise ValueError("a scored rule needs at least support and confidence")

    @property
    def support(self) -> float:
        return self.measures.s

    @property
    def confidence(self) -> float:
        return self.measures.alpha


@dataclass(frozen=True)
class Thresholds:
    min_support: Fraction | float = Fraction(0)
    min_confidence: Fraction | float = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "min_support", check_unit_interval(self.min_support, "min_support"))
        object.__setattr__(
            self, "min_confidence", check_unit_interval(self.min_confidence, "min_confidence")
        )


def generate_rules(
    db: TransactionDB,
    frequent_pairs: Iterable[ItemsetCount],
    t: Thresholds = Thresholds(),
    which: Iterable[str] = DEFAULT_MEASURES,
) -> list[ScoredRule]:
    """Score both directions of every pair and keep those passing ``t``.

    Threshold tests are exact (integer cross-multiplication). Survivors are
    ordered by descending support, then descending confidence, then rule.
    Rules whose antecedent never occurs have no confidence and are skipped.
    """
    names = check_measure_names({"support", "confidence", *which})
    keyed = []
    for pair in frequent_pairs:
        if pair.size != 2:
            raise ValueError(f"expected a 2-itemset, got {pair.itemset!r}")
        a, b = pair.itemset
        for r in (Rule(a, b), Rule(b, a)):
            counts = rule_counts(db, r)
            both, x, _, n = counts
            if n == 0 or x == 0:
                continue
            if not (meets(both, n, t.min_support) and meets(both, x, t.min_confidence)):
                continue
            scored = ScoredRule(r, measures_from_counts(r, counts, names))
            # N is shared by every rule, so the co-occurrence count orders support
            keyed.append(((-both, -Fraction(both, x), r.sort_key()), scored))
    keyed.sort(key=lambda item: item[0])
    return [scored for _, scored in keyed]


@dataclass(frozen=True)
class Edge:
    """Undirected edge ``u -- v`` (``u < v``) with its surviving directed rules.

    ``forward`` is the best ``u→v`` rule, ``backward`` the best ``v→u`` rule;
    either may be None when that direction was filtered out.
    """

    u: str
    v: str
    forward: ScoredRule | None = None
    backward: ScoredRule | None = None

    @property
    def rules(self) -> list[ScoredRule]:
        return [r for r in (self.forward, self.backward) if r is not None]

    @property
    def cosine(self) -> float | None:
        for r in self.rules:
            if r.measures.cosine is not None:
                return r.measures.cosine
        return None

    @property
    def best(self) -> ScoredRule:
        """Surviving direction with the higher confidence (forward on ties)."""
        return max(self.rules, key=lambda r: r.confidence)


@dataclass(frozen=True)
class RelationGraph:
    nodes: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    _adjacency: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        nodes = set(self.nodes)
        adjacency = {node: set() for node in nodes}
        for e in self.edges:
            if e.u == e.v:
                raise ValueError(f"self-loop on {e.u!r}")
            if e.u not in nodes or e.v not in nodes:
                raise ValueError(f"edge {e.u}--{e.v} has an endpoint outside the node set")
            adjacency[e.u].add(e.v)
            adjacency[e.v].add(e.u)
        object.__setattr__(self, "_adjacency", adjacency)

    def neighbors(self, code: str) -> frozenset[str]:
        return frozenset(self._adjacency[code])

    def edge(self, a: str, b: str) -> Edge | None:
        u, v = sorted((a, b))
        for e in self.edges:
            if (e.u, e.v) == (u, v):
                return e
        return None


def build_relation_graph(rules: Iterable[ScoredRule]) -> RelationGraph:
    """One undirected edge per item pair with at least one surviving rule."""
    slots: dict[tuple[str, str], list] = {}
    for scored in rules:
        r = scored.rule
        if len(r.antecedent) != 1 or len(r.consequent) != 1:
            raise ValueError(f"relation graph needs single-item rules, got {r}")
        (a,), (b,) = r.antecedent, r.consequent
        u, v = sorted((a, b))
        slot = slots.setdefault((u, v), [None, None])
        side = 0 if a == u else 1
        current = slot[side]
        if current is None or scored.confidence > current.confidence:
            slot[side] = scored
    edges = tuple(Edge(u, v, fwd, bwd) for (u, v), (fwd, bwd) in sorted(slots.items()))
    nodes = tuple(sorted({code for pair in slots for code in pair}))
    return RelationGraph(nodes, edges)


def degrees(g: RelationGraph) -> dict[str, int]:
    return {node: len(g.neighbors(node)) for node in g.nodes}


def recommend_hubs(g: RelationGraph, db: TransactionDB, k: int = 2) -> list[tuple[str, int]]:
    """Top-``k`` nodes by degree; ties go to the more frequent item, then the code."""
    if k < 1:
        raise ValueError("k must be at least 1")
    deg = degrees(g)
    counts = item_counts(db)
    ranked = sorted(deg, key=lambda code: (-deg[code], -counts.get(code, 0), code))
    return [(code, deg[code]) for code in ranked[:k]]


def classify_cosine(value: float, strong_threshold: float = DEFAULT_STRONG_THRESHOLD) -> str:
    """``"strong"`` when ``value >= strong_threshold``, else ``"weak"``."""
    if not 0 <= value <= 1:
        raise OutOfRange(f"cosine {value!r} outside [0, 1]")
    if not 0 <= strong_threshold <= 1:
        raise OutOfRange(f"strong threshold {strong_threshold!r} outside [0, 1]")
    return STRONG if value >= strong_threshold else WEAK
