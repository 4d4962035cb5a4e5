"""Cross-check the saturated rule store against attribute closure."""
from fdproof import SaturationConfig, attribute_closure, saturate, semantic_fd_set

RULES = [("A", "B C"), ("B", "E"), ("C D", "E F")]
NAMES = "A B C D E F"

for start in ("A", "B", "A D", "C D"):
    print(f"closure({start}) = {attribute_closure(RULES, start)}")

res = saturate(RULES, NAMES, SaturationConfig(early_exit=False))
expected = semantic_fd_set(RULES, NAMES)
print("\nstatus:", res.status.name, "after", res.rounds, "rounds")
print("saturated rules:", len(res.store))
print("semantically implied rules:", len(expected))
print("identical sets:", res.store.rule_set() == expected)

for step in res.trace:
    print(f"  round {step.round} {step.generator.value}: +{step.new_rules} -> {step.total_rules}")
