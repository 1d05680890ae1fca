"""Test-support kit: seeded synthetic databases and brute-force references.

Nothing here shares counting code with :mod:`rulekit.mine` or
:mod:`rulekit.measures`; every count is a direct scan over the transactions.

Shuffling is reproducible across implementations. The generator is
SplitMix64 (state += 0x9E3779B97F4A7C15, then the standard xor-shift-multiply
finaliser) seeded with ``seed mod 2**64``. Transactions are shuffled with a
Fisher-Yates pass from the last index down to 1, drawing the swap index
``j`` in ``[0, i]`` as ``x mod (i + 1)`` after rejecting draws
``x >= 2**64 - (2**64 mod (i + 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (
    EmptyDatabase,
    InvalidSpec,
    UndefinedConfidence,
    UndefinedCosine,
    UniverseTooLarge,
    UnknownItem,
)
from .measures import MeasureSet, Rule
from .mine import ItemsetCount
from .txdb import TransactionDB, check_code

MASK64 = (1 << 64) - 1
MAX_BRUTE_FORCE_UNIVERSE = 20


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        if bound < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next()
            if x < limit:
                return x % bound

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]


@dataclass(frozen=True)
class SynthSpec:
    """Planted pair distribution: ``pair_weights[(a, b)]`` copies of ``{a, b}``
    plus ``extra_singletons[a]`` copies of ``{a}``."""

    seed: int
    universe: tuple[str, ...]
    pair_weights: dict = field(default_factory=dict)
    extra_singletons: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        validate_spec(self)


def validate_spec(spec: SynthSpec) -> None:
    if not isinstance(spec.seed, int):
        raise InvalidSpec(f"seed must be an integer, got {spec.seed!r}")
    if not -(1 << 63) <= spec.seed <= MASK64:
        raise InvalidSpec(f"seed {spec.seed} does not fit in 64 bits")
    if len(set(spec.universe)) != len(spec.universe):
        raise InvalidSpec("universe lists an item twice")
    for code in spec.universe:
        try:
            check_code(code)
        except ValueError as exc:
            raise InvalidSpec(str(exc)) from None
    known = set(spec.universe)
    seen_pairs = set()
    for pair, weight in spec.pair_weights.items():
        if len(pair) != 2 or pair[0] == pair[1]:
            raise InvalidSpec(f"pair {pair!r} must name two distinct items")
        if not known.issuperset(pair):
            raise InvalidSpec(f"pair {pair!r} uses an item outside the universe")
        if frozenset(pair) in seen_pairs:
            raise InvalidSpec(f"pair {pair!r} listed twice")
        seen_pairs.add(frozenset(pair))
        _check_weight(weight, pair)
    for code, weight in spec.extra_singletons.items():
        if code not in known:
            raise InvalidSpec(f"singleton {code!r} is outside the universe")
        _check_weight(weight, code)
    total = sum(spec.pair_weights.values()) + sum(spec.extra_singletons.values())
    if total == 0:
        raise InvalidSpec("all multiplicities are zero")


def _check_weight(weight, where) -> None:
    if isinstance(weight, bool) or not isinstance(weight, int) or weight < 0:
        raise InvalidSpec(f"multiplicity for {where!r} must be a non-negative integer")


def synth_db(spec: SynthSpec) -> TransactionDB:
    """Materialise ``spec`` and shuffle it deterministically by its seed.

    Before shuffling, pairs come in ``pair_weights`` order followed by
    singletons in ``extra_singletons`` order.
    """
    validate_spec(spec)
    rows = [tuple(pair) for pair, w in spec.pair_weights.items() for _ in range(w)]
    rows += [(code,) for code, w in spec.extra_singletons.items() for _ in range(w)]
    SplitMix64(spec.seed).shuffle(rows)
    return TransactionDB(rows, items=spec.universe)


def parse_synth_spec(text: str) -> SynthSpec:
    """Read the ``key = value`` spec file format.

    ::

        # comment
        seed = 42
        universe = H, N, P
        pair H,N = 120
        single P = 3

    ``seed`` defaults to 0 when absent; ``universe`` is required.
    """
    seed = 0
    universe = None
    pairs: dict = {}
    singles: dict = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.replace("\r", "").strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidSpec(f"line {lineno}: expected 'key = value'")
        key, value = key.strip(), value.strip()
        try:
            if key == "seed":
                seed = int(value, 0)
            elif key == "universe":
                universe = tuple(code.strip() for code in value.split(","))
            elif key.startswith("pair "):
                pair = tuple(code.strip() for code in key[5:].split(","))
                if pair in pairs:
                    raise InvalidSpec(f"pair {','.join(pair)} listed twice")
                pairs[pair] = int(value)
            elif key.startswith("single "):
                code = key[7:].strip()
                if code in singles:
                    raise InvalidSpec(f"singleton {code} listed twice")
                singles[code] = int(value)
            else:
                raise InvalidSpec(f"unknown key {key!r}")
        except ValueError as exc:
            raise InvalidSpec(f"line {lineno}: {exc}") from None
        except InvalidSpec as exc:
            raise InvalidSpec(f"line {lineno}: {exc}") from None
    if universe is None:
        raise InvalidSpec("missing 'universe' line")
    return SynthSpec(seed, universe, pairs, singles)


def format_synth_spec(spec: SynthSpec) -> str:
    lines = [f"seed = {spec.seed}", f"universe = {','.join(spec.universe)}"]
    lines += [f"pair {a},{b} = {w}" for (a, b), w in spec.pair_weights.items()]
    lines += [f"single {code} = {w}" for code, w in spec.extra_singletons.items()]
    return "\n".join(lines) + "\n"


def random_spec(seed: int, max_items: int = 8, max_transactions: int = 64) -> SynthSpec:
    """A random valid spec with at most ``max_items`` items and
    ``max_transactions`` transactions in total."""
    rng = SplitMix64(seed)
    n_items = 2 + rng.below(max_items - 1)
    universe = tuple(f"i{k}" for k in range(n_items))
    budget = 1 + rng.below(max_transactions)
    pairs: dict = {}
    singles: dict = {}
    candidates = list(combinations(universe, 2))
    while budget:
        take = 1 + rng.below(min(budget, 12))
        if rng.below(4) == 0:
            code = universe[rng.below(n_items)]
            singles[code] = singles.get(code, 0) + take
        else:
            pair = candidates[rng.below(len(candidates))]
            pairs[pair] = pairs.get(pair, 0) + take
        budget -= take
    return SynthSpec(seed, universe, pairs, singles)


def random_db(seed: int, max_items: int = 8, max_transactions: int = 64) -> TransactionDB:
    """Random transactions of any size; some universe items may never occur."""
    rng = SplitMix64(seed)
    n_items = 1 + rng.below(max_items)
    universe = [f"i{k}" for k in range(n_items)]
    n_tx = rng.below(max_transactions + 1)
    rows = []
    for _ in range(n_tx):
        # skewed inclusion so that larger itemsets recur
        p = 1 + rng.below(3)
        tx = [code for code in universe if rng.below(4) < p]
        rows.append(tx or [universe[rng.below(n_items)]])
    return TransactionDB(rows, items=universe)


def _scan(db: TransactionDB, itemset) -> int:
    wanted = set(itemset)
    return sum(1 for tx in db.transactions if wanted <= tx)


def brute_force_frequent(
    db: TransactionDB, min_support=0, max_itemset_size: int | None = None
) -> list[ItemsetCount]:
    """Every subset of the universe with count >= 1 and support >= ``min_support``."""
    universe = sorted(db.universe)
    if len(universe) > MAX_BRUTE_FORCE_UNIVERSE:
        raise UniverseTooLarge(
            f"universe has {len(universe)} items; brute force allows {MAX_BRUTE_FORCE_UNIVERSE}"
        )
    threshold = Fraction(repr(min_support)) if isinstance(min_support, float) else Fraction(min_support)
    n = db.n_total
    top = len(universe) if max_itemset_size is None else min(max_itemset_size, len(universe))
    found = []
    for size in range(1, top + 1):
        for subset in combinations(universe, size):
            c = _scan(db, subset)
            if c >= 1 and c * threshold.denominator >= threshold.numerator * n:
                found.append(ItemsetCount(subset, c, n))
    return found


def brute_force_measures(db: TransactionDB, r: Rule) -> MeasureSet:
    """Support, confidence, cosine and lift of ``r`` from full scans."""
    for code in sorted(r.antecedent | r.consequent):
        if code not in db.universe:
            raise UnknownItem(code)
    n = len(db.transactions)
    both = _scan(db, r.antecedent | r.consequent)
    cx = _scan(db, r.antecedent)
    cy = _scan(db, r.consequent)
    if n == 0:
        raise EmptyDatabase()
    if cx == 0:
        raise UndefinedConfidence("antecedent never occurs")
    if cy == 0:
        raise UndefinedCosine("consequent never occurs")
    return MeasureSet(
        s=both / n,
        alpha=both / cx,
        cosine=both / math.sqrt(cx * cy),
        lift=(n * both) / (cx * cy),
    )

