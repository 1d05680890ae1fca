"""
Apriori on synthetic transactions
=================================

Beyond pairs: mine k-itemsets from random baskets and confirm the result
against exhaustive enumeration.
"""

# %%
from rulekit import MiningConfig, apriori
from rulekit.oracle import SynthSpec, brute_force_frequent, random_db, synth_db
from rulekit.report import render_itemset_table

db = random_db(seed=11)
print(db, "sizes:", sorted({len(tx) for tx in db.transactions}))

# %%
frequent = apriori(db, MiningConfig(min_support=0.25))
print(render_itemset_table(frequent))

# %%
# The brute-force oracle enumerates all 2^|universe| subsets with a full
# scan each; it must agree exactly.
assert frequent == brute_force_frequent(db, 0.25)
print("apriori agrees with enumeration")

# %%
# A planted pair distribution: shuffled deterministically from its seed.
spec = SynthSpec(seed=2024, universe=("tv", "web", "flyer"),
                 pair_weights={("tv", "web"): 12, ("web", "flyer"): 3},
                 extra_singletons={"flyer": 5})
planted = synth_db(spec)
print([sorted(tx) for tx in planted.transactions[:5]])
print(render_itemset_table(apriori(planted, MiningConfig(0.1))))
