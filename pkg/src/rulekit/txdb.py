"""Transaction databases: data model, text ingestion and the survey fixture.

A transaction is a set of item codes; a :class:`TransactionDB` is an ordered
multiset of transactions together with the item universe they are drawn from.
Two text formats are understood:

* the *transaction file*: one comma-separated transaction per line, ``#``
  comments and blank lines ignored;
* the *survey CSV*: header ``respondent_id,answer1,answer2`` followed by one
  two-answer enquiry form per row.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DuplicateItemInTransaction,
    DuplicateRespondent,
    MalformedLine,
)

SURVEY_HEADER = ("respondent_id", "answer1", "answer2")

_FORBIDDEN_CODE_CHARS = frozenset(",#")


def check_code(code: str) -> str:
    if not isinstance(code, str) or not code:
        raise ValueError(f"item code must be a non-empty string, got {code!r}")
    if any(ch.isspace() or ch in _FORBIDDEN_CODE_CHARS for ch in code):
        raise ValueError(f"item code {code!r} contains whitespace, ',' or '#'")
    return code


@dataclass(frozen=True)
class Item:
    code: str
    label: str | None = None

    def __post_init__(self):
        check_code(self.code)


class TransactionDB:
    """Immutable multiset of transactions over a fixed item universe.

    ``transactions`` is any iterable of iterables of item codes. ``items``
    optionally pre-declares the universe (as :class:`Item` objects or bare
    codes), which fixes its order and allows items that never occur; codes
    first seen in transactions are appended in order of appearance.
    """

    def __init__(self, transactions: Iterable[Iterable[str]] = (), items=None):
        universe: dict[str, Item] = {}
        for entry in items or ():
            item = entry if isinstance(entry, Item) else Item(entry)
            if item.code in universe:
                raise ValueError(f"duplicate item code {item.code!r} in universe")
            universe[item.code] = item

        stored = []
        for codes in transactions:
            codes = list(codes)
            if not codes:
                raise ValueError("transactions must contain at least one item")
            seen = set()
            for code in codes:
                if code in seen:
                    raise DuplicateItemInTransaction(f"item {code!r} repeated in transaction")
                seen.add(code)
                if code not in universe:
                    universe[code] = Item(code)
            stored.append(frozenset(seen))

        self._transactions = tuple(stored)
        self._items = universe
        self._tidsets = {code: set() for code in universe}
        for tid, tx in enumerate(self._transactions):
            for code in tx:
                self._tidsets[code].add(tid)
        self._tidsets = {code: frozenset(tids) for code, tids in self._tidsets.items()}
        self._count_cache: dict[frozenset[str], int] = {}

    @property
    def transactions(self) -> tuple[frozenset[str], ...]:
        return self._transactions

    @property
    def n_total(self) -> int:
        return len(self._transactions)

    @property
    def universe(self) -> tuple[str, ...]:
        """Item codes in universe order."""
        return tuple(self._items)

    @property
    def items(self) -> Mapping[str, Item]:
        return dict(self._items)

    def label(self, code: str) -> str | None:
        return self._items[code].label

    def __len__(self):
        return len(self._transactions)

    def __iter__(self):
        return iter(self._transactions)

    def __contains__(self, code):
        return code in self._items

    def __eq__(self, other):
        if not isinstance(other, TransactionDB):
            return NotImplemented
        return (
            self._transactions == other._transactions
            and list(self._items.values()) == list(other._items.values())
        )

    def __hash__(self):
        return hash((self._transactions, tuple(self._items.values())))

    def __repr__(self):
        return f"TransactionDB(n_total={self.n_total}, universe={list(self.universe)})"

    def count(self, itemset: Iterable[str]) -> int:
        """Number of transactions containing every code of ``itemset``.

        Uses the per-item transaction-id index, memoised per itemset; unknown
        codes count as 0.
        The empty itemset is contained in every transaction.
        """
        codes = frozenset(itemset)
        cached = self._count_cache.get(codes)
        if cached is not None:
            return cached
        if not codes:
            result = self.n_total
        else:
            tidsets = sorted((self._tidsets.get(code, frozenset()) for code in codes), key=len)
            result = len(tidsets[0].intersection(*tidsets[1:])) if tidsets[0] else 0
        # immutable database, so memoised counts never go stale
        self._count_cache[codes] = result
        return result

    def multiplicities(self) -> Counter:
        """Counter mapping each distinct transaction to how often it occurs."""
        return Counter(self._transactions)

    def extended(self, transactions: Iterable[Iterable[str]]) -> "TransactionDB":
        """A new database with ``transactions`` appended."""
        return TransactionDB(
            [*self._transactions, *transactions], items=self._items.values()
        )

    def ordered(self, transaction: Iterable[str]) -> list[str]:
        """Codes of ``transaction`` sorted by universe position."""
        position = {code: i for i, code in enumerate(self._items)}
        return sorted(transaction, key=position.__getitem__)


def _lines(text: str):
    # LF splitting with CR stripped, so CRLF input parses identically
    for lineno, raw in enumerate(text.split("\n"), start=1):
        yield lineno, raw.replace("\r", "")


def parse_transactions(text: str) -> TransactionDB:
    """Parse the transaction file format.

    >>> parse_transactions("H,N\\nH,P\\n").universe
    ('H', 'N', 'P')
    """
    rows = []
    for lineno, line in _lines(text):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        codes = [token.strip() for token in line.split(",")]
        if any(not code for code in codes):
            raise MalformedLine("empty item code", lineno)
        for code in codes:
            try:
                check_code(code)
            except ValueError as exc:
                raise MalformedLine(str(exc), lineno) from None
        if len(set(codes)) != len(codes):
            dup = next(code for code in codes if codes.count(code) > 1)
            raise DuplicateItemInTransaction(f"item {dup!r} repeated", lineno)
        rows.append(codes)
    return TransactionDB(rows)


def parse_survey_csv(text: str) -> TransactionDB:
    """Parse two-answer enquiry forms (``respondent_id,answer1,answer2``)."""
    lines = [(n, line) for n, line in _lines(text)]
    # trailing newline leaves an empty final element
    while lines and not lines[-1][1].strip():
        lines.pop()
    if not lines:
        raise MalformedLine("missing header row", 1)

    header_no, header = lines[0]
    if tuple(next(csv.reader([header]))) != SURVEY_HEADER:
        raise MalformedLine(f"header must be {','.join(SURVEY_HEADER)!r}", header_no)

    rows = []
    respondents = set()
    for lineno, line in lines[1:]:
        if not line.strip():
            raise MalformedLine("blank row", lineno)
        fields = [field.strip() for field in next(csv.reader([line]))]
        if len(fields) != 3:
            raise MalformedLine(f"expected 3 columns, got {len(fields)}", lineno)
        respondent, first, second = fields
        if not respondent or not first or not second:
            raise MalformedLine("empty field", lineno)
        for code in (first, second):
            try:
                check_code(code)
            except ValueError as exc:
                raise MalformedLine(str(exc), lineno) from None
        if first == second:
            raise DuplicateItemInTransaction(f"answer {first!r} given twice", lineno)
        if respondent in respondents:
            raise DuplicateRespondent(f"respondent {respondent!r} already seen", lineno)
        respondents.add(respondent)
        rows.append((first, second))
    return TransactionDB(rows)


def format_transactions(db: TransactionDB) -> str:
    """Serialize ``db`` in the transaction file format (universe item order)."""
    return "".join(",".join(db.ordered(tx)) + "\n" for tx in db.transactions)


def format_survey_csv(db: TransactionDB) -> str:
    """Serialize a database of two-item transactions as survey CSV.

    Respondents are numbered from 1 in transaction order.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SURVEY_HEADER)
    for respondent, tx in enumerate(db.transactions, start=1):
        if len(tx) != 2:
            raise ValueError(
                f"transaction {respondent} has {len(tx)} items; survey rows need exactly 2"
            )
        writer.writerow([respondent, *db.ordered(tx)])
    return out.getvalue()


def item_counts(db: TransactionDB) -> dict[str, int]:
    """Absolute occurrence count of every universe item (zeros included)."""
    counts = dict.fromkeys(db.universe, 0)
    for tx in db.transactions:
        for code in tx:
            counts[code] += 1
    return counts


# Advertisement channels named on the enquiry forms, with their codes.
ADVERTISEMENT_ITEMS = (
    Item("H", "Hording"),
    Item("N", "News paper"),
    Item("P", "Pamphlets"),
    Item("R", "Radio"),
    Item("V", "Advertisement Van"),
    Item("C", "Personal Contact"),
)

# How often each pair of channels was named together; every form names two.
ADVERTISEMENT_PAIRS = (
    (("H", "N"), 120),
    (("H", "P"), 70),
    (("H", "R"), 10),
    (("H", "C"), 30),
    (("N", "P"), 20),
    (("N", "C"), 20),
    (("P", "C"), 10),
    (("R", "C"), 20),
    (("V", "C"), 50),
)

# Per-channel answer totals reported alongside the pair table.
ADVERTISEMENT_TOTALS = {"H": 230, "N": 160, "P": 100, "R": 30, "V": 50, "C": 130}


def survey_fixture() -> TransactionDB:
    """The 350-form advertisement survey, rebuilt from its pair counts.

    Transactions appear pair by pair in table order, each pair repeated by
    its multiplicity. The pair table's margins equal the per-channel totals,
    so the reconstruction is exact.
    """
    rows = [pair for pair, multiplicity in ADVERTISEMENT_PAIRS for _ in range(multiplicity)]
    return TransactionDB(rows, items=ADVERTISEMENT_ITEMS)


def is_survey_fixture(db: TransactionDB) -> bool:
    """True when ``db`` holds the survey fixture's transactions, in any order."""
    return db.multiplicities() == survey_fixture().multiplicities()
