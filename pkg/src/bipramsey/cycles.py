"""Exact-length cycle search in bipartite views.

The search is a depth-first path extension over bitmask adjacency.  Each
cycle is found from its smallest ``x`` vertex (the anchor) and only in the
direction where the anchor's first ``y`` neighbour is smaller than its last,
so every cycle is visited once.  Neighbours are tried in ascending order,
which makes the first certificate found the canonical one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from .budget import Budget
from .graph import ColoredBipartiteGraph, GraphError, GraphView, Vertex, X, Y, as_view, bits, parse_vertex


@dataclass(frozen=True)
class CycleCertificate:
    """Vertex sequence ``x_1, y_1, ..., x_l, y_l`` of a cycle of ``length = 2l``.

    ``color`` is ``None`` when the cycle was found in a multi-color view; the
    verifier then only requires the edges to be present.
    """

    color: int | None
    vertices: tuple[Vertex, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "color": self.color,
            "vertices": [str(v) for v in self.vertices],
            "length": self.length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> CycleCertificate:
        cert = cls(d.get("color"), tuple(parse_vertex(s) for s in d["vertices"]))
        if "length" in d and d["length"] != cert.length:
            raise GraphError(f"declared length {d['length']} != {cert.length} vertices")
        return cert


class Check(NamedTuple):
    """Outcome of a verifier: truthy iff ``ok``; ``reason`` names the first failure."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_cycle(g: ColoredBipartiteGraph, cert: CycleCertificate) -> Check:
    """Check a certificate against ``g`` without trusting whoever produced it."""
    vs = cert.vertices
    if len(vs) < 4 or len(vs) % 2:
        return Check(False, f"length {len(vs)} is not an even number >= 4")
    for k, v in enumerate(vs):
        want = "x" if k % 2 == 0 else "y"
        if v.side != want:
            return Check(False, f"position {k} should be an {want} vertex, got {v}")
        bound = g.n1 if want == "x" else g.n2
        if not 0 <= v.index < bound:
            return Check(False, f"vertex {v} out of range")
    if len(set(vs)) != len(vs):
        return Check(False, "repetition: a vertex occurs twice")
    for k in range(len(vs)):
        a, b = vs[k], vs[(k + 1) % len(vs)]
        x, y = (a.index, b.index) if a.side == "x" else (b.index, a.index)
        c = g.color(x, y)
        if c == 0:
            return Check(False, f"edge color: {a}-{b} is not an edge")
        if cert.color is not None and c != cert.color:
            return Check(False, f"edge color: {a}-{b} has color {c}, expected {cert.color}")
    return Check(True)


def two_core(xadj: dict[int, int], yadj: dict[int, int], xs: int, ys: int) -> tuple[int, int]:
    """Masks of the vertices that survive repeated removal of degree < 2."""
    changed = True
    while changed:
        changed = False
        for x in bits(xs):
            if (xadj[x] & ys).bit_count() < 2:
                xs &= ~(1 << x)
                changed = True
        for y in bits(ys):
            if (yadj[y] & xs).bit_count() < 2:
                ys &= ~(1 << y)
                changed = True
    return xs, ys


def _reach(start_y: int, xadj, yadj, free_x: int, free_y: int) -> tuple[int, int]:
    # vertices of free_x/free_y reachable from the y-mask start_y
    rx, ry = 0, start_y
    fy = start_y
    while fy:
        nx = 0
        for y in bits(fy):
            nx |= yadj[y]
        nx &= free_x & ~rx
        rx |= nx
        ny = 0
        for x in bits(nx):
            ny |= xadj[x]
        fy = ny & free_y & ~ry
        ry |= fy
    return rx, ry


class _Search:
    def __init__(self, xadj, yadj, ell: int, budget: Budget | None):
        self.xadj = xadj
        self.yadj = yadj
        self.ell = ell
        self.budget = budget

    def from_anchor(self, a: int, allowed_x: int, allowed_y: int) -> list[tuple[int, int]] | None:
        self.a = a
        self.allowed_x = allowed_x
        self.allowed_y = allowed_y
        self.closing = self.xadj[a] & allowed_y
        if self.closing.bit_count() < 2:
            return None
        self.px = [a]
        self.py: list[int] = []
        for y1 in bits(self.closing):
            # y_l must be a larger anchor neighbour than y_1
            if not self.closing >> (y1 + 1):
                break
            self.py.append(y1)
            if self._at_y(y1, 1 << a, 1 << y1):
                return list(zip(self.px, self.py))
            self.py.pop()
        return None

    def _at_y(self, y: int, used_x: int, used_y: int) -> bool:
        # px has k x's, py has k y's; choose x_{k+1}
        if self.budget is not None:
            self.budget.tick()
        k = len(self.px)
        ell = self.ell
        free_x = self.allowed_x & ~used_x
        free_y = self.allowed_y & ~used_y
        end_y = self.closing & free_y & ~((1 << (self.py[0] + 1)) - 1)
        if not end_y:
            return False
        need_x = ell - k
        need_y = ell - k
        if need_x > 1:
            rx, ry = _reach(1 << y, self.xadj, self.yadj, free_x, free_y)
            if rx.bit_count() < need_x or (ry & free_y).bit_count() < need_y or not (ry & end_y):
                return False
        cand = self.yadj[y] & free_x
        last = k == ell - 1
        for x in bits(cand):
            if last:
                hit = self.xadj[x] & end_y
                if hit:
                    yl = (hit & -hit).bit_length() - 1
                    self.px.append(x)
                    self.py.append(yl)
                    return True
                continue
            self.px.append(x)
            for y2 in bits(self.xadj[x] & free_y):
                self.py.append(y2)
                if self._at_y(y2, used_x | (1 << x), used_y | (1 << y2)):
                    return True
                self.py.pop()
            self.px.pop()
        return False


def _certificate(pairs: list[tuple[int, int]], color: int | None) -> CycleCertificate:
    seq: list[Vertex] = []
    for x, y in pairs:
        seq += [X(x), Y(y)]
    return CycleCertificate(color, tuple(seq))


def _view_color(v: GraphView) -> int | None:
    return v.colors[0] if len(v.colors) == 1 else None


def find_cycle_of_length(
    g: ColoredBipartiteGraph | GraphView, target: int, budget: Budget | None = None
) -> CycleCertificate | None:
    """Canonical cycle of exactly ``target`` vertices in the view, or ``None``.

    The search is exhaustive, so ``None`` means no such cycle exists.  When
    a ``budget`` is given and runs out, :class:`~bipramsey.budget.BudgetExhausted`
    is raised instead (never a false ``None``).
    """
    v = as_view(g)
    if target % 2 or target < 4:
        raise GraphError(f"target length must be even and >= 4, got {target}")
    if target > 2 * min(len(v.xs), len(v.ys)):
        raise GraphError(f"target {target} exceeds 2*min side = {2 * min(len(v.xs), len(v.ys))}")
    ell = target // 2
    xadj, yadj = v.xadj, v.yadj
    xs, ys = two_core(xadj, yadj, v.xset, v.yset)
    search = _Search(xadj, yadj, ell, budget)
    while xs.bit_count() >= ell and ys.bit_count() >= ell:
        a = (xs & -xs).bit_length() - 1
        pairs = search.from_anchor(a, xs, ys)
        if pairs is not None:
            return _certificate(pairs, _view_color(v))
        xs, ys = two_core(xadj, yadj, xs & ~(1 << a), ys)
    return None


def has_cycle_through_edge(
    xadj: list[int] | dict[int, int], yadj: list[int] | dict[int, int], x: int, y: int, ell: int
) -> bool:
    """Is there a cycle with ``2*ell`` vertices through the edge ``x y``?

    ``xadj``/``yadj`` are bitmask adjacency lists that already contain the
    edge.  Used for incremental checks where only new cycles matter.
    """
    if ell < 2:
        return False
    closing = xadj[x] & ~(1 << y)
    if not closing:
        return False

    def at_y(yc: int, used_x: int, used_y: int, k: int) -> bool:
        # k = number of x's on the path (x plus chosen ones)
        free_y_end = closing & ~used_y
        if not free_y_end:
            return False
        cand = yadj[yc] & ~used_x
        if k == ell - 1:
            for nx in bits(cand):
                if xadj[nx] & free_y_end:
                    return True
            return False
        for nx in bits(cand):
            for ny in bits(xadj[nx] & ~used_y):
                if at_y(ny, used_x | (1 << nx), used_y | (1 << ny), k + 1):
                    return True
        return False

    return at_y(y, 1 << x, 1 << y, 1)


def circumference(g: ColoredBipartiteGraph | GraphView, budget: Budget | None = None) -> int:
    """Length of a longest cycle of the view (0 for forests); sides <= 32 only."""
    v = as_view(g)
    if len(v.xs) > 32 or len(v.ys) > 32:
        raise GraphError("circumference is exact only for view sides <= 32; probe lengths instead")
    xs, ys = two_core(v.xadj, v.yadj, v.xset, v.yset)
    top = 2 * min(xs.bit_count(), ys.bit_count())
    for L in range(top, 3, -2):
        if find_cycle_of_length(v, L, budget) is not None:
            return L
    return 0
