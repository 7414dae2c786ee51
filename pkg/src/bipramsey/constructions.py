"""Explicit extremal colorings.

``lower_bound_coloring`` splits ``K_{N,N}`` (``N = sum(n_i) - r``) into column
windows, one per color, so color ``k`` is ``K_{N, n_k - 1}`` and cannot hold
a ``C_{2 n_k}``.  ``h_tilde`` is the 2-colored ``4n x 4n`` graph of minimum
degree ``3n`` with no monochromatic ``C_{4n}``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .graph import ColoredBipartiteGraph, GraphError

RED = 1
BLUE = 2


def column_windows(lengths: Sequence[int]) -> list[tuple[int, int]]:
    """1-based inclusive column window ``(lo, hi)`` of each color."""
    windows = []
    prefix = 0
    for k, n_k in enumerate(lengths, start=1):
        lo = prefix - k + 2
        prefix += n_k
        hi = prefix - k
        windows.append((lo, hi))
    return windows


def lower_bound_coloring(lengths: Sequence[int]) -> ColoredBipartiteGraph:
    """Good coloring of ``K_{N,N}``, ``N = sum(lengths) - r``.

    ``lengths`` are the half-lengths ``n_1..n_r`` of the forbidden cycles
    ``C_{2 n_k}``.  Edge ``u_s v_t`` gets color ``k`` when ``t`` lies in the
    ``k``-th window of :func:`column_windows` (the row ``s`` is irrelevant).
    """
    lengths = [int(n) for n in lengths]
    if not lengths:
        raise GraphError("need at least one color")
    if any(n < 2 for n in lengths):
        raise GraphError(f"every n_i must be >= 2, got {lengths}")
    r = len(lengths)
    N = sum(lengths) - r
    if N < 1:
        raise GraphError(f"N = {N} < 1")
    row = np.zeros(N, dtype=np.int16)
    for k, (lo, hi) in enumerate(column_windows(lengths), start=1):
        row[lo - 1 : hi] = k
    return ColoredBipartiteGraph(np.tile(row, (N, 1)), r, complete=True)


def h_tilde(n: int) -> ColoredBipartiteGraph:
    """The 2-colored graph on ``U = U_1..U_4``, ``V = V_1..V_4`` (blocks of size n).

    Red is color 1, blue color 2.  The exceptional vertices are the first
    vertex ``u`` of ``U_3`` and the first vertex ``v`` of ``V_1``.
    Block pairs not listed are absent.
    """
    if n < 1:
        raise GraphError(f"n must be >= 1, got {n}")
    N = 4 * n

    def blk(i: int) -> slice:
        return slice((i - 1) * n, i * n)

    c = np.zeros((N, N), dtype=np.int16)
    c[blk(1), blk(1)] = BLUE
    c[blk(1), blk(2)] = BLUE
    c[blk(1), blk(4)] = RED

    c[blk(2), blk(1)] = RED
    c[blk(2), blk(3)] = RED
    c[blk(2), blk(2)] = BLUE

    c[blk(3), blk(2)] = RED
    c[blk(3), blk(3)] = BLUE
    c[blk(3), blk(4)] = BLUE
    u = 2 * n
    c[u, blk(4)] = RED

    v = 0
    c[blk(4), blk(3)] = RED
    c[blk(4), blk(1)] = RED
    c[blk(4), blk(4)] = BLUE
    c[blk(4), v] = BLUE
    return ColoredBipartiteGraph(c, 2, complete=False)


def h_tilde_exceptional(n: int) -> tuple[int, int]:
    """Indices ``(u, v)`` of the exceptional vertices of ``h_tilde(n)``."""
    return 2 * n, 0
