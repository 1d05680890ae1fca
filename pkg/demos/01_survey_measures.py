"""
Scoring the advertisement survey
================================

350 admitted students each named two advertisement channels that first told
them about the college. This script rebuilds those answers and scores every
channel pair with support, confidence, cosine and lift.
"""

# %%
# The database is rebuilt from the pair table: 120 forms named hoardings and
# newspapers together, 70 hoardings and pamphlets, and so on.
from rulekit import Rule, ReportConfig, evaluate, item_counts, survey_fixture
from rulekit.mine import pair_counts
from rulekit.report import find_errata, render_measure_table, round_half_up
from rulekit.rulegraph import generate_rules

db = survey_fixture()
print(db)
print(item_counts(db))

# %%
# Support is symmetric, confidence is not. N→H reads "of the forms naming
# newspapers, how many also named hoardings".
for rule in (Rule("N", "H"), Rule("H", "N")):
    m = evaluate(db, rule, {"support", "confidence", "cosine", "lift"})
    print(rule, {k: round_half_up(v) for k, v in m.populated().items()})

# %%
# Every direction of every pair, strongest support first.
rules = generate_rules(db, pair_counts(db), which=("support", "confidence", "cosine"))
print(render_measure_table(rules, ReportConfig()))

# %%
# Four confidences in the originally circulated table cannot be reproduced
# from the counts; each matches some other quantity instead.
for e in find_errata(db):
    print(f"{e.rule}: printed {e.printed}, computed {e.computed} ({e.explanation})")
