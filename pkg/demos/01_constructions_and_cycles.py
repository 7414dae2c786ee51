"""Explicit colorings and exact cycle search.

Run with ``python demos/01_constructions_and_cycles.py``.
"""

from __future__ import annotations

from bipramsey import find_cycle_of_length, min_degree, verify_cycle
from bipramsey.constructions import column_windows, h_tilde, lower_bound_coloring

# The column construction: colors are assigned by column windows, so color k
# spans only n_k - 1 columns and cannot close a cycle of length 2 n_k.
ns = [4, 2]
g = lower_bound_coloring(ns)
print(f"lower_bound_coloring({ns}) is K_{{{g.n1},{g.n2}}} with windows {column_windows(ns)}")
print(g.colors)
for k, n in enumerate(ns, start=1):
    cert = find_cycle_of_length(g.view(k), 2 * n)
    print(f"  color {k}: C_{2 * n} {'absent' if cert is None else 'FOUND'}")

# Once the window is wide enough the search finds cycles, and every
# certificate can be checked edge by edge.
cert = find_cycle_of_length(g.view(1), 6)
print("a red C_6:", " ".join(str(v) for v in cert.vertices), "verified:", bool(verify_cycle(g, cert)))

# The 4n x 4n block graph is 3n-regular.  Only n = 1 avoids monochromatic
# C_{4n}; for larger n the search returns a verified witness.
for n in (1, 2, 3):
    h = h_tilde(n)
    found = {c: find_cycle_of_length(h.view(c), 4 * n) for c in (1, 2)}
    print(f"h_tilde({n}): min degree {min_degree(h)}", end="")
    for c, cert in found.items():
        name = "red" if c == 1 else "blue"
        print(f", {name} C_{4 * n}: {'none' if cert is None else ' '.join(map(str, cert.vertices))}", end="")
    print()
