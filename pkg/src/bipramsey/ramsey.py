"""Exact small bipartite Ramsey numbers of even cycles.

``decide_arrowing`` fills the ``N x N`` color matrix in row-major order.
Branches are cut when the new edge closes a forbidden cycle in its color,
or when the partial matrix cannot be the lexicographic maximum of its orbit
under row permutations, column permutations and permutations of colors with
equal forbidden lengths.  These three tests all follow from one lex-leader
condition on the row-major order, so together they keep one representative
of every orbit.
"""

from __future__ import annotations

import itertools
import json
import time
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .budget import Budget, BudgetExhausted
from .constructions import lower_bound_coloring
from .cycles import find_cycle_of_length, has_cycle_through_edge
from .graph import ColoredBipartiteGraph, GraphError

ALL_HIT = "all-colorings-hit"
GOOD = "good-coloring"
EXHAUSTED = "budget-exhausted"


@dataclass
class RamseyVerdict:
    N: int
    lengths: tuple[int, ...]
    outcome: str
    coloring: ColoredBipartiteGraph | None = None
    nodes: int = 0
    seconds: float = 0.0
    state: list[int] | None = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "N": self.N,
            "lengths": list(self.lengths),
            "outcome": self.outcome,
            "nodes": self.nodes,
            "coloring": None if self.coloring is None else self.coloring.colors.tolist(),
        }
        if self.state is not None:
            out["state"] = self.state
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> RamseyVerdict:
        col = d.get("coloring")
        g = None
        if col is not None:
            g = ColoredBipartiteGraph(np.array(col), len(d["lengths"]), complete=True)
        return cls(d["N"], tuple(d["lengths"]), d["outcome"], g, d.get("nodes", 0), d.get("seconds", 0.0), d.get("state"))


def _check_lengths(lengths: Sequence[int]) -> tuple[int, ...]:
    lengths = tuple(int(x) for x in lengths)
    if not 1 <= len(lengths) <= 3:
        raise GraphError(f"only r <= 3 colors are supported, got r = {len(lengths)}")
    for x in lengths:
        if x < 4 or x % 2:
            raise GraphError(f"cycle lengths must be even and >= 4, got {x}")
    return lengths


def is_good_coloring(g: ColoredBipartiteGraph, lengths: Sequence[int]) -> bool:
    """Complete coloring with no color-``i`` cycle of length ``lengths[i-1]``."""
    if not g.complete or g.r != len(lengths):
        return False
    for c, L in enumerate(lengths, start=1):
        if L <= 2 * min(g.n1, g.n2) and find_cycle_of_length(g.view(c), L) is not None:
            return False
    return True


def _color_symmetries(lengths: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Non-identity permutations (as maps on 1..r, index 0 unused) among equal lengths."""
    r = len(lengths)
    perms = []
    for perm in itertools.permutations(range(1, r + 1)):
        if all(lengths[c - 1] == lengths[perm[c - 1] - 1] for c in range(1, r + 1)):
            if perm != tuple(range(1, r + 1)):
                perms.append((0,) + perm)
    return perms


class _Solver:
    def __init__(self, N: int, lengths: tuple[int, ...], budget: Budget):
        self.N = N
        self.r = len(lengths)
        self.ells = [0] + [L // 2 for L in lengths]
        self.budget = budget
        self.M = [[0] * N for _ in range(N)]
        self.xadj = [[0] * N for _ in range(self.r + 1)]
        self.yadj = [[0] * N for _ in range(self.r + 1)]
        self.sigmas = _color_symmetries(lengths)
        # colors tried high to low: the kept representative is the lex-maximum
        self.order = list(range(self.r, 0, -1))
        self.path: list[int] = []
        self.trying = 0

    def run(self, resume: list[int] | None) -> bool:
        N = self.N
        return self._cell(0, [True] * N, [True] * len(self.sigmas), True, resume or [])

    def _cell(self, p: int, col_eq: list[bool], sig_open: list[bool], row_eq: bool, resume: list[int]) -> bool:
        N = self.N
        if p == N * N:
            return True
        i, j = divmod(p, N)
        if j == 0:
            row_eq = i > 0
        M = self.M
        start = 0
        if p < len(resume):
            start = self.order.index(resume[p])
        for v in self.order[start:]:
            if p < len(resume) and v != resume[p]:
                resume = []  # left the resumed prefix
            self.trying = v
            if p >= len(resume):
                self.budget.tick()  # replaying a resumed prefix is free
            if row_eq and M[i - 1][j] < v:
                continue
            if j > 0 and col_eq[j] and M[i][j - 1] < v:
                continue
            new_sig = sig_open
            dead = False
            for s, sigma in enumerate(self.sigmas):
                if sig_open[s] and sigma[v] != v:
                    if sigma[v] > v:
                        dead = True
                        break
                    if new_sig is sig_open:
                        new_sig = list(sig_open)
                    new_sig[s] = False
            if dead:
                continue
            xa, ya = self.xadj[v], self.yadj[v]
            xa[i] |= 1 << j
            ya[j] |= 1 << i
            if not has_cycle_through_edge(xa, ya, i, j, self.ells[v]):
                M[i][j] = v
                self.path.append(v)
                new_col = col_eq
                if j > 0 and col_eq[j] and M[i][j - 1] != v:
                    new_col = list(col_eq)
                    new_col[j] = False
                if self._cell(p + 1, new_col, new_sig, row_eq and i > 0 and M[i - 1][j] == v, resume):
                    return True
                self.path.pop()
                M[i][j] = 0
            xa[i] &= ~(1 << j)
            ya[j] &= ~(1 << i)
            resume = []
        return False


def decide_arrowing(
    N: int,
    lengths: Sequence[int],
    budget: Budget | None = None,
    resume: list[int] | None = None,
) -> RamseyVerdict:
    """Does every coloring of ``K_{N,N}`` with ``r = len(lengths)`` colors contain
    a color-``i`` cycle of length ``lengths[i-1]`` for some ``i``?

    Returns ``ALL_HIT``, ``GOOD`` with a verified good coloring, or
    ``EXHAUSTED`` with the current search path in ``state``; passing that
    path back as ``resume`` continues the search where it stopped.
    """
    lengths = _check_lengths(lengths)
    if N < 1:
        raise GraphError(f"N must be >= 1, got {N}")
    budget = budget or Budget()
    solver = _Solver(N, lengths, budget)
    t0 = time.perf_counter()
    try:
        found = solver.run(resume)
    except BudgetExhausted:
        return RamseyVerdict(N, lengths, EXHAUSTED, None, budget.nodes, time.perf_counter() - t0, solver.path + [solver.trying])
    dt = time.perf_counter() - t0
    if not found:
        return RamseyVerdict(N, lengths, ALL_HIT, None, budget.nodes, dt)
    g = ColoredBipartiteGraph(np.array(solver.M), len(lengths), complete=True)
    if not is_good_coloring(g, lengths):  # pragma: no cover - the search is sound
        raise AssertionError("solver produced a coloring that does not verify")
    return RamseyVerdict(N, lengths, GOOD, g, budget.nodes, dt)


def lower_bound(lengths: Sequence[int]) -> int:
    """``sum(n_i) - r + 1`` for cycle lengths ``2 n_i``."""
    lengths = _check_lengths(lengths)
    return sum(L // 2 for L in lengths) - len(lengths) + 1


@dataclass
class RamseyValue:
    lengths: tuple[int, ...]
    value: int | None
    interval: tuple[int, int | None]
    certificate: ColoredBipartiteGraph | None
    verdicts: list[RamseyVerdict] = field(default_factory=list)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "lengths": list(self.lengths),
            "value": self.value,
            "interval": list(self.interval),
            "certificate": None if self.certificate is None else self.certificate.colors.tolist(),
            "verdicts": [v.to_dict(timing) for v in self.verdicts],
        }


def bramsey(lengths: Sequence[int], N_max: int, budget_factory=None) -> RamseyValue:
    """Smallest ``N <= N_max`` at which every coloring is hit.

    Scanning starts at :func:`lower_bound`; the good coloring one below it is
    the explicit column construction.  ``budget_factory`` makes a fresh
    :class:`Budget` per ``N``.  When a budget runs out, or ``N_max`` is
    reached first, the value is ``None`` and ``interval`` brackets it
    (``None`` as upper end means unknown).
    """
    lengths = _check_lengths(lengths)
    lo = lower_bound(lengths)
    cert = None
    if lo - 1 >= 1:
        cert = lower_bound_coloring([L // 2 for L in lengths])
        if not is_good_coloring(cert, lengths):  # pragma: no cover
            raise AssertionError("lower-bound construction failed to verify")
    verdicts = []
    for N in range(lo, N_max + 1):
        budget = budget_factory() if budget_factory else None
        v = decide_arrowing(N, lengths, budget)
        verdicts.append(v)
        if v.outcome == ALL_HIT:
            return RamseyValue(lengths, N, (N, N), cert, verdicts)
        if v.outcome == EXHAUSTED:
            return RamseyValue(lengths, None, (N, None), cert, verdicts)
        cert = v.coloring
    return RamseyValue(lengths, None, (N_max + 1, None), cert, verdicts)
