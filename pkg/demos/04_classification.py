"""Coarse grouping of four-qubit states by which kinds of tangle are nonzero.

Group I has pair, triple and four-way entanglement; II lacks pair
entanglement; III lacks triple entanglement; IV has neither triple nor
four-way entanglement, its four-way entanglement coming from pairs alone.
GHZ-like states, with four-way tangles only, fall outside the four
groups and are reported as FOUR_TANGLES_ONLY.
"""
from qmonogamy import classify, make
from qmonogamy.zoo import table2_check

for name, params in [("W_TILDE", {}), ("W4", {}), ("BELL_PRODUCT", {}),
                     ("L_AIA", {"a": 1.0}), ("CHI", {}), ("GHZ4", {}), ("PSI_S", {})]:
    g = classify(make(name, params).state, restarts=8, iterations=200)
    flags = ", ".join(k for k, v in g.predicates.items() if v)
    print(f"{name:<13} {g.group:<20} {flags}")

print("\nzero/nonzero pattern of the family-table quantities for L_AIA(a=1):")
for row in table2_check(make("L_AIA", {"a": 1.0}).state, restarts=8, iterations=200):
    print(f"  {row.quantity:<14} {row.value:.3e}  {'nonzero' if row.nonzero else 'zero'}")
