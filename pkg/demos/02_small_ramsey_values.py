"""Exact bipartite Ramsey values by exhaustive search with symmetry breaking.

Run with ``python demos/02_small_ramsey_values.py``.
"""

from __future__ import annotations

from bipramsey import Budget, bramsey, decide_arrowing, lower_bound
from bipramsey.ramsey import EXHAUSTED

# br(C_{2n}, C_4) for n = 2..5.  The scan starts at the column-construction
# bound, so the certificate one below the value is explicit.
for n in (2, 3, 4, 5):
    lengths = [2 * n, 4]
    val = bramsey(lengths, n + 2)
    nodes = sum(v.nodes for v in val.verdicts)
    print(f"br(C_{2 * n}, C_4) = {val.value}  (lower bound {lower_bound(lengths)}, {nodes} search nodes)")
    print("  good coloring one below:")
    for row in val.certificate.colors:
        print("   ", " ".join(str(c) for c in row))

# A search can be cut into slices: an exhausted budget returns the current
# path, and feeding it back continues from there.
v = decide_arrowing(6, [10, 4], Budget(max_nodes=5000))
slices = 1
while v.outcome == EXHAUSTED:
    v = decide_arrowing(6, [10, 4], Budget(max_nodes=5000), v.state)
    slices += 1
print(f"K_6,6 with (C_10, C_4): {v.outcome} after {slices} slices")
