"""Derive A D -> F from three rules and print the proof in every format."""
from fdproof import prove, render, validate_proof
from fdproof.core import Universe

RULES = [("A", "B C"), ("B", "E"), ("C D", "E F")]
NAMES = "A B C D E F"
TARGET = ("A D", "F")

outcome = prove(RULES, NAMES, TARGET)
print("status:", outcome.status.name)
print("stored rules when the target appeared:", len(outcome.result.store))

# The tree only cites initial rules and identities as leaves.
print("validates:", validate_proof(outcome.tree, RULES, NAMES, target=TARGET))

universe = Universe(NAMES)
for fmt in ("paper", "steps", "json"):
    print(f"\n--- {fmt} ---")
    print(render(outcome.tree, fmt, universe))
