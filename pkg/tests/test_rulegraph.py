from collections import Counter
from fractions import Fraction

import pytest

from rulekit.errors import OutOfRange
from rulekit.measures import MeasureSet, Rule
from rulekit.mine import pair_counts
from rulekit.rulegraph import (
    Edge,
    RelationGraph,
    ScoredRule,
    Thresholds,
    build_relation_graph,
    classify_cosine,
    degrees,
    generate_rules,
    recommend_hubs,
)
from rulekit.txdb import ADVERTISEMENT_PAIRS, TransactionDB, parse_transactions


@pytest.fixture(scope="module")
def fixture_rules(fixture_db):
    return generate_rules(fixture_db, pair_counts(fixture_db), Thresholds(0, 0))


@pytest.fixture(scope="module")
def fixture_graph(fixture_rules):
    return build_relation_graph(fixture_rules)


def test_all_directions_scored(fixture_rules):
    assert len(fixture_rules) == 2 * len(ADVERTISEMENT_PAIRS)
    assert {r.rule for r in fixture_rules} == {
        Rule(x, y) for (a, b), _ in ADVERTISEMENT_PAIRS for x, y in ((a, b), (b, a))
    }


def test_rule_order(fixture_rules):
    assert fixture_rules[0].rule == Rule("N", "H")
    assert fixture_rules[1].rule == Rule("H", "N")
    assert fixture_rules[1].confidence == 120 / 230
    keys = [(-r.support, -r.confidence) for r in fixture_rules]
    assert keys == sorted(keys)


def test_unanimity_threshold_empties(fixture_db):
    assert generate_rules(fixture_db, pair_counts(fixture_db), Thresholds(1.0, 1.0)) == []


def test_threshold_filters_exactly(fixture_db):
    # V→C has confidence exactly 1; N→H exactly 3/4
    kept = generate_rules(fixture_db, pair_counts(fixture_db), Thresholds(0, Fraction(3, 4)))
    assert {str(r.rule) for r in kept} == {"N→H", "V→C"}
    kept = generate_rules(fixture_db, pair_counts(fixture_db), Thresholds(0.2, 0))
    assert {str(r.rule) for r in kept} == {"N→H", "H→N", "P→H", "H→P"}


def test_generate_rules_rejects_non_pairs(fixture_db):
    from rulekit.mine import ItemsetCount

    with pytest.raises(ValueError):
        generate_rules(fixture_db, [ItemsetCount(("H",), 230, 350)])


def test_thresholds_validation():
    with pytest.raises(ValueError):
        Thresholds(1.5, 0)
    with pytest.raises(ValueError):
        Thresholds(0, -0.1)


def test_fixture_graph_shape(fixture_graph):
    assert len(fixture_graph.nodes) == 6
    assert len(fixture_graph.edges) == 9


def test_fixture_degrees(fixture_graph):
    incidence = Counter()
    for (a, b), _ in ADVERTISEMENT_PAIRS:
        incidence[a] += 1
        incidence[b] += 1
    deg = degrees(fixture_graph)
    assert deg == dict(incidence)
    assert deg["H"] == 4 and deg["C"] == 5
    assert (deg["N"], deg["P"], deg["R"], deg["V"]) == (3, 3, 2, 1)
    assert sum(deg.values()) == 2 * len(fixture_graph.edges)


def test_fixture_connectivity(fixture_graph):
    for node in set(fixture_graph.nodes) - {"H", "C"}:
        assert fixture_graph.neighbors(node) & {"H", "C"}


def test_edges_carry_both_directions(fixture_graph):
    for e in fixture_graph.edges:
        assert e.u < e.v
        assert e.forward.rule == Rule(e.u, e.v)
        assert e.backward.rule == Rule(e.v, e.u)
        assert e.forward.support == e.backward.support
        assert e.forward.measures.cosine == e.backward.measures.cosine
    vc = fixture_graph.edge("V", "C")
    assert vc.best.rule == Rule("V", "C")


def test_empty_graph():
    g = build_relation_graph([])
    assert g.nodes == () and g.edges == ()
    assert degrees(g) == {}
    assert recommend_hubs(g, TransactionDB(), 1) == []


def test_path_graph():
    db = parse_transactions("H,N\nN,P\n")
    g = build_relation_graph(generate_rules(db, pair_counts(db)))
    assert degrees(g) == {"H": 1, "N": 2, "P": 1}
    assert g.neighbors("N") == {"H", "P"}


def test_graph_rejects_bad_structure():
    with pytest.raises(ValueError):
        RelationGraph(("A",), (Edge("A", "A"),))
    with pytest.raises(ValueError):
        RelationGraph(("A",), (Edge("A", "B"),))
    multi = ScoredRule(Rule(["A", "B"], "C"), MeasureSet(s=0.1, alpha=0.5))
    with pytest.raises(ValueError):
        build_relation_graph([multi])


def test_single_direction_edge():
    only = ScoredRule(Rule("B", "A"), MeasureSet(s=0.1, alpha=0.5))
    g = build_relation_graph([only])
    (e,) = g.edges
    assert (e.u, e.v) == ("A", "B")
    assert e.forward is None and e.backward is only
    assert e.cosine is None


def test_scored_rule_requires_support_and_confidence():
    with pytest.raises(ValueError):
        ScoredRule(Rule("A", "B"), MeasureSet(s=0.1))


def test_recommend_hubs(fixture_graph, fixture_db):
    assert recommend_hubs(fixture_graph, fixture_db, 2) == [("C", 5), ("H", 4)]
    # N and P tie on degree 3; N is the more frequent item (160 vs 100)
    assert recommend_hubs(fixture_graph, fixture_db, 10) == [
        ("C", 5), ("H", 4), ("N", 3), ("P", 3), ("R", 2), ("V", 1)
    ]
    with pytest.raises(ValueError):
        recommend_hubs(fixture_graph, fixture_db, 0)


def test_recommend_tie_break_by_code():
    db = parse_transactions("A,B\nC,D\n")
    g = build_relation_graph(generate_rules(db, pair_counts(db)))
    assert recommend_hubs(g, db, 4) == [("A", 1), ("B", 1), ("C", 1), ("D", 1)]


@pytest.mark.parametrize(
    "value, expected",
    [(0.6255, "strong"), (0.4616, "weak"), (1.0, "strong"), (0.5, "strong"), (0.0, "weak")],
)
def test_classify_cosine(value, expected):
    assert classify_cosine(value) == expected


def test_classify_cosine_range():
    with pytest.raises(OutOfRange):
        classify_cosine(1.2)
    with pytest.raises(OutOfRange):
        classify_cosine(-0.1)
    assert classify_cosine(0.3, strong_threshold=0.3) == "strong"


def test_fixture_cosine_split(fixture_graph):
    strong = {(e.u, e.v) for e in fixture_graph.edges if classify_cosine(e.cosine) == "strong"}
    assert strong == {("H", "N"), ("C", "V")}
