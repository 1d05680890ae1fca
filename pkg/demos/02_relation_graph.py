"""
Relation graph and channel recommendation
=========================================

Surviving pair rules become undirected edges between channels. The channels
touching the most edges reach the largest share of the other channels.
"""

# %%
from rulekit import build_relation_graph, degrees, generate_rules, recommend_hubs, survey_fixture
from rulekit.mine import pair_counts
from rulekit.report import render_dot
from rulekit.rulegraph import Thresholds, classify_cosine

db = survey_fixture()
graph = build_relation_graph(generate_rules(db, pair_counts(db), Thresholds(0, 0)))
print(len(graph.nodes), "nodes,", len(graph.edges), "edges")
print(degrees(graph))

# %%
# Personal contact touches five channels and hoardings four; between them
# they are adjacent to everything else.
hubs = recommend_hubs(graph, db, k=2)
print(hubs)
others = set(graph.nodes) - {code for code, _ in hubs}
print(all(graph.neighbors(code) & {"C", "H"} for code in others))

# %%
# Cosine ignores forms that mention neither channel. At 0.5 only two pairs
# count as strongly related.
for e in sorted(graph.edges, key=lambda e: -e.cosine):
    print(f"{e.u}-{e.v}  {e.cosine:.4f}  {classify_cosine(e.cosine)}")

# %%
# Raising the support threshold prunes the weak edges.
pruned = build_relation_graph(generate_rules(db, pair_counts(db), Thresholds(0.1, 0)))
print(degrees(pruned))

# %%
# DOT output renders with ``dot -Tpng``.
print(render_dot(graph))
