"""Deterministic text emitters: measure tables, DOT graphs and the full report.

Numbers are rounded half-up for display only and always use ``.`` as the
decimal separator. Output is UTF-8 text with LF line endings.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UnsupportedFormat
from .measures import DEFAULT_MEASURES, MEASURES, Rule, check_measure_names, confidence, cosine, support
from .mine import ItemsetCount, pair_counts
from .rulegraph import (
    DEFAULT_STRONG_THRESHOLD,
    RelationGraph,
    ScoredRule,
    Thresholds,
    build_relation_graph,
    classify_cosine,
    degrees,
    generate_rules,
    recommend_hubs,
)
from .txdb import ADVERTISEMENT_ITEMS, TransactionDB, is_survey_fixture, item_counts

FORMATS = ("markdown", "csv", "dot", "json")
TABLE_FORMATS = ("markdown", "csv", "json")


@dataclass(frozen=True)
class ReportConfig:
    format: str = "markdown"
    decimals: int = 4
    include_errata_notes: bool = False

    def __post_init__(self):
        if self.format not in FORMATS:
            raise UnsupportedFormat(self.format)
        if self.decimals < 1:
            raise ValueError("decimals must be >= 1")


def round_half_up(value: float, decimals: int = 4) -> str:
    """Fixed-point string of ``value`` rounded half away from zero.

    Rounds the shortest decimal representation of the float, so 0.00005
    becomes 0.0001 as written rather than per its binary expansion.
    """
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def _format_threshold(value) -> str:
    return repr(float(value)) if isinstance(value, Fraction) else str(value)


def _markdown_table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def _csv_table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def _number(value: float, decimals: int):
    # JSON value rounded for display; stays a number, not a string
    return float(round_half_up(value, decimals))


def _columns_for(rules: Sequence[ScoredRule], columns) -> tuple[str, ...]:
    if columns is not None:
        return check_measure_names(columns)
    if not rules:
        return DEFAULT_MEASURES
    present = set()
    for r in rules:
        present.update(r.measures.populated())
    return tuple(name for name in MEASURES if name in present)


def render_measure_table(
    rules: Sequence[ScoredRule], cfg: ReportConfig = ReportConfig(), columns=None
) -> str:
    """One row per rule (input order): relation, then each measure column.

    ``columns`` defaults to every measure populated on any rule; unpopulated
    cells are left empty.
    """
    if cfg.format not in TABLE_FORMATS:
        raise UnsupportedFormat(cfg.format, "measure tables")
    cols = _columns_for(rules, columns)

    def cell(r, name):
        value = r.measures.get(name)
        return "" if value is None else round_half_up(value, cfg.decimals)

    if cfg.format == "json":
        payload = []
        for r in rules:
            row = {
                "relation": r.rule.label(),
                "antecedent": sorted(r.rule.antecedent),
                "consequent": sorted(r.rule.consequent),
            }
            for name in cols:
                value = r.measures.get(name)
                row[name] = None if value is None else _number(value, cfg.decimals)
            payload.append(row)
        return _json(payload)

    arrow = "->" if cfg.format == "csv" else "→"
    rows = [[r.rule.label(arrow), *(cell(r, name) for name in cols)] for r in rules]
    if cfg.format == "csv":
        return _csv_table(["relation", *cols], rows)
    return _markdown_table(["Relation", *cols], rows)


def render_itemset_table(itemsets: Sequence[ItemsetCount], cfg: ReportConfig = ReportConfig()) -> str:
    if cfg.format not in TABLE_FORMATS:
        raise UnsupportedFormat(cfg.format, "itemset tables")
    if cfg.format == "json":
        return _json(
            [
                {"itemset": list(s.itemset), "count": s.count,
                 "support": _number(s.support, cfg.decimals)}
                for s in itemsets
            ]
        )
    rows = [[",".join(s.itemset), str(s.count), round_half_up(s.support, cfg.decimals)]
            for s in itemsets]
    if cfg.format == "csv":
        return _csv_table(["itemset", "count", "support"], rows)
    return _markdown_table(["Itemset", "Count", "Support"], rows)


_DOT_ID = re.compile(r"^(?:[A-Za-z_\u0080-\uffff][A-Za-z0-9_\u0080-\uffff]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))$")
_DOT_KEYWORDS = {"graph", "digraph", "subgraph", "node", "edge", "strict"}


def dot_id(code: str) -> str:
    if _DOT_ID.match(code) and code.lower() not in _DOT_KEYWORDS:
        return code
    return '"' + code.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(g: RelationGraph, decimals: int = 4) -> str:
    """Undirected DOT graph; edges labelled with their cosine when known."""
    if not g.nodes:
        return "graph G { }\n"
    lines = ["graph G {"]
    lines.extend(f"  {dot_id(node)};" for node in sorted(g.nodes))
    for e in sorted(g.edges, key=lambda e: (e.u, e.v)):
        attrs = ""
        if e.cosine is not None:
            attrs = f' [label="{round_half_up(e.cosine, decimals)}"]'
        lines.append(f"  {dot_id(e.u)} -- {dot_id(e.v)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_graph(g: RelationGraph, cfg: ReportConfig = ReportConfig()) -> str:
    """The relation graph as DOT, or as an edge/degree listing."""
    if cfg.format == "dot":
        return render_dot(g, cfg.decimals)
    deg = degrees(g)

    def cos(e):
        return None if e.cosine is None else round_half_up(e.cosine, cfg.decimals)

    if cfg.format == "json":
        return _json(
            {
                "nodes": [{"item": n, "degree": deg[n]} for n in sorted(g.nodes)],
                "edges": [
                    {"u": e.u, "v": e.v,
                     "cosine": None if e.cosine is None else _number(e.cosine, cfg.decimals)}
                    for e in g.edges
                ],
            }
        )
    rows = [[e.u, e.v, cos(e) or ""] for e in g.edges]
    if cfg.format == "csv":
        return _csv_table(["u", "v", "cosine"], rows)
    head = f"{len(g.nodes)} nodes, {len(g.edges)} edges.\n\n"
    return (
        head
        + _markdown_table(["Item", "Degree"], [[n, str(deg[n])] for n in sorted(g.nodes)])
        + "\n"
        + _markdown_table(["Edge", "Cosine"], [[f"{e.u}--{e.v}", cos(e) or ""] for e in g.edges])
    )


def render_hubs(hubs: Sequence[tuple[str, int]], cfg: ReportConfig = ReportConfig()) -> str:
    if cfg.format not in TABLE_FORMATS:
        raise UnsupportedFormat(cfg.format, "hub rankings")
    if cfg.format == "json":
        return _json([{"rank": i, "item": code, "degree": d} for i, (code, d) in enumerate(hubs, 1)])
    rows = [[str(i), code, str(d)] for i, (code, d) in enumerate(hubs, 1)]
    if cfg.format == "csv":
        return _csv_table(["rank", "item", "degree"], rows)
    return _markdown_table(["Rank", "Item", "Degree"], rows)


# Relations as originally tabulated for the advertisement survey:
# (antecedent, consequent, support, confidence, cosine) at 4 decimals.
REFERENCE_MEASURES = (
    ("N", "H", "0.3429", "0.7500", "0.6255"),
    ("P", "H", "0.2000", "0.7000", "0.4616"),
    ("R", "H", "0.0286", "0.3333", "0.1204"),
    ("P", "N", "0.0571", "0.2000", "0.1581"),
    ("C", "H", "0.0857", "0.2308", "0.1735"),
    ("N", "C", "0.0571", "0.4571", "0.1387"),
    ("P", "C", "0.0286", "0.2857", "0.0877"),
    ("C", "R", "0.0571", "0.6667", "0.3203"),
    ("C", "V", "0.1429", "0.3714", "0.6202"),
)


@dataclass(frozen=True)
class Erratum:
    rule: Rule
    measure: str
    printed: str
    computed: str
    explanation: str


def _explain(db: TransactionDB, r: Rule, printed: str) -> str:
    n = db.n_total
    (x,), (y,) = r.antecedent, r.consequent
    candidates = [
        (db.count([x]) / n, f"count({x})/N"),
        (db.count([y]) / n, f"count({y})/N"),
        (confidence(db, r.reversed()), f"confidence of {r.reversed()}"),
        (support(db, r), "the support"),
    ]
    for value, description in candidates:
        if round_half_up(value, len(printed.split(".")[1])) == printed:
            return f"printed value equals {description}"
    return "no simple explanation"


def find_errata(db: TransactionDB) -> list[Erratum]:
    """Reference-table entries that the computed measures do not reproduce."""
    found = []
    for x, y, *printed in REFERENCE_MEASURES:
        r = Rule(x, y)
        computed = {
            "support": support(db, r),
            "confidence": confidence(db, r),
            "cosine": cosine(db, x, y),
        }
        for (name, value), shown in zip(computed.items(), printed):
            decimals = len(shown.split(".")[1])
            ours = round_half_up(value, decimals)
            if ours != shown:
                found.append(Erratum(r, name, shown, ours, _explain(db, r, shown)))
    return found


def _labels(db: TransactionDB) -> dict[str, str]:
    labels = {code: db.label(code) or "" for code in db.universe}
    if is_survey_fixture(db):
        for item in ADVERTISEMENT_ITEMS:
            labels[item.code] = labels.get(item.code) or item.label
    return labels


def render_report(
    db: TransactionDB,
    cfg: ReportConfig = ReportConfig(),
    thresholds: Thresholds = Thresholds(),
    strong_threshold=DEFAULT_STRONG_THRESHOLD,
    top: int = 2,
) -> str:
    """Full Markdown analysis of ``db``.

    Sections: Items, Pairs, Rules, Cosine, Graph degrees, Recommendation,
    plus Errata when requested and ``db`` is the advertisement survey.
    """
    if cfg.format != "markdown":
        raise UnsupportedFormat(cfg.format, "the full report")
    d = cfg.decimals
    n = db.n_total
    labels = _labels(db)
    counts = item_counts(db)

    def frac(count):
        return round_half_up(count / n, d) if n else "-"

    out = ["# Association rule report", "",
           f"{n} transactions over {len(db.universe)} items.", ""]

    out += ["## Items", ""]
    out.append(_markdown_table(
        ["Item", "Label", "Count", "Support"],
        [[code, labels[code], str(counts[code]), frac(counts[code])] for code in db.universe],
    ))

    pairs = sorted(pair_counts(db), key=lambda p: (-p.count, p.itemset))
    out += ["## Pairs", ""]
    out.append(_markdown_table(
        ["Pair", "Count", "Support"],
        [[",".join(p.itemset), str(p.count), frac(p.count)] for p in pairs],
    ))

    rules = generate_rules(db, pairs, thresholds, DEFAULT_MEASURES)
    out += ["## Rules", "",
            f"Minimum support {_format_threshold(thresholds.min_support)}, "
            f"minimum confidence {_format_threshold(thresholds.min_confidence)}; "
            f"{len(rules)} rules.", ""]
    out.append(render_measure_table(rules, cfg, columns=("support", "confidence")))

    graph = build_relation_graph(rules)
    ranked_edges = sorted(graph.edges, key=lambda e: (-e.cosine, e.u, e.v))
    out += ["## Cosine", "", f"Strong when cosine >= {_format_threshold(strong_threshold)}.", ""]
    out.append(_markdown_table(
        ["Relation", "cosine", "Strength"],
        [[f"{e.u}↔{e.v}", round_half_up(e.cosine, d), classify_cosine(e.cosine, strong_threshold)]
         for e in ranked_edges],
    ))

    deg = degrees(graph)
    full_ranking = recommend_hubs(graph, db, max(len(graph.nodes), 1))
    out += ["## Graph degrees", "", f"{len(graph.nodes)} nodes, {len(graph.edges)} edges.", ""]
    out.append(_markdown_table(["Item", "Degree"], [[code, str(deg[code])] for code, _ in full_ranking]))

    out += ["## Recommendation", ""]
    hubs = recommend_hubs(graph, db, top)
    if not hubs:
        out.append("No relations survive the thresholds; nothing to recommend.\n")
    for rank, (code, degree) in enumerate(hubs, 1):
        name = f"{code} ({labels[code]})" if labels.get(code) else code
        neighbours = ", ".join(sorted(graph.neighbors(code)))
        out.append(f"{rank}. {name}: degree {degree}, related to {neighbours}")
    if hubs:
        covered = set(graph.nodes) - {code for code, _ in hubs}
        reached = all(any(h in graph.neighbors(c) for h, _ in hubs) for c in covered)
        out.append("")
        out.append(
            "Every other item is related to a recommended item."
            if reached
            else "Some items are not related to any recommended item."
        )
        out.append("")

    if cfg.include_errata_notes and is_survey_fixture(db):
        errata = find_errata(db)
        out += ["## Errata", "",
                f"{len(errata)} reference-table entries differ from the computed values.", ""]
        out.append(_markdown_table(
            ["Relation", "Measure", "Printed", "Computed", "Note"],
            [[str(e.rule), e.measure, e.printed, e.computed, e.explanation] for e in errata],
        ))

    return "\n".join(out).rstrip("\n") + "\n"
