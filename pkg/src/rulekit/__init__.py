"""Association rules, interestingness measures and relation graphs over
item-transaction databases."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .measures import MeasureSet, Rule, confidence, cosine, evaluate, lift, support
from .mine import ItemsetCount, MiningConfig, apriori, pair_counts
from .report import ReportConfig, render_dot, render_measure_table, render_report
from .rulegraph import (
    RelationGraph,
    ScoredRule,
    Thresholds,
    build_relation_graph,
    classify_cosine,
    degrees,
    generate_rules,
    recommend_hubs,
)
from .txdb import (
    Item,
    TransactionDB,
    item_counts,
    parse_survey_csv,
    parse_transactions,
    survey_fixture,
)
