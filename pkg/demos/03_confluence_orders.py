"""Generator order changes provenance and proofs, never the fixpoint."""
import random
from itertools import permutations

from fdproof import SaturationConfig, canonical_attrset, extract_proof, render, saturate
from fdproof.saturation import DEFAULT_ORDER

RULES = [("A", "B C"), ("B", "E"), ("C D", "E F")]
NAMES = "A B C D E F"
TARGET = ("A D", "F")

rng = random.Random(0)
orders = rng.sample(list(permutations(DEFAULT_ORDER)), 4)

reference = None
for order in orders:
    res = saturate(RULES, NAMES, SaturationConfig(generator_order=order, early_exit=False))
    rules = res.store.rule_set()
    reference = reference or rules
    target_id = res.store.find(*map(canonical_attrset, TARGET))
    label = ",".join(t.value for t in order)
    print(f"{label}: {len(rules)} rules, same set: {rules == reference}")
    print("   ", render(extract_proof(res.store, target_id), "paper"))
