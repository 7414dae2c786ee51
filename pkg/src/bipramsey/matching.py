"""Maximum matchings, connected matchings and {S, T, U} decompositions."""

from __future__ import annotations

import itertools
import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from .cycles import Check
from .graph import (
    ColoredBipartiteGraph,
    GraphView,
    Vertex,
    X,
    Y,
    as_view,
    bits,
    components,
    split_sides,
)


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def saturated(self) -> int:
        return 2 * len(self.edges)

    def vertices(self) -> set[Vertex]:
        return {X(x) for x, _ in self.edges} | {Y(y) for _, y in self.edges}

    def to_dict(self) -> dict:
        return {"edges": [[f"x{x}", f"y{y}"] for x, y in self.edges], "size": self.size}


def is_matching(g: ColoredBipartiteGraph | GraphView, m: Matching) -> bool:
    v = as_view(g)
    xs = [x for x, _ in m.edges]
    ys = [y for _, y in m.edges]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        return False
    return all(x in v.xadj and v.has_edge(x, y) for x, y in m.edges)


@dataclass(frozen=True)
class ConnectedMatchingCertificate:
    color: int | None
    component: frozenset[Vertex]
    matching: Matching

    @property
    def saturated(self) -> int:
        return self.matching.saturated

    def to_dict(self) -> dict:
        return {
            "color": self.color,
            "component": [str(v) for v in sorted(self.component)],
            "matching": self.matching.to_dict()["edges"],
            "saturated": self.saturated,
        }


@dataclass(frozen=True)
class TutteDecomposition:
    """Partition ``{S, T, U}`` certifying that no large matching exists."""

    S: frozenset[Vertex]
    T: frozenset[Vertex]
    U: frozenset[Vertex]
    alpha: int

    def to_dict(self) -> dict:
        return {
            "S": [str(v) for v in sorted(self.S)],
            "T": [str(v) for v in sorted(self.T)],
            "U": [str(v) for v in sorted(self.U)],
            "alpha": self.alpha,
        }


class TutteNotFound(LookupError):
    """No verifiable decomposition was found although no large matching exists."""


def _hopcroft_karp(xs: Iterable[int], adj: dict[int, list[int]]) -> dict[int, int]:
    xs = list(xs)
    mate_x: dict[int, int | None] = {x: None for x in xs}
    mate_y: dict[int, int] = {}
    inf = math.inf
    while True:
        dist: dict[int, float] = {}
        queue: deque[int] = deque()
        for x in xs:
            if mate_x[x] is None:
                dist[x] = 0
                queue.append(x)
        free_dist = inf
        while queue:
            x = queue.popleft()
            if dist[x] >= free_dist:
                continue
            for y in adj[x]:
                x2 = mate_y.get(y)
                if x2 is None:
                    if free_dist == inf:
                        free_dist = dist[x] + 1
                elif x2 not in dist:
                    dist[x2] = dist[x] + 1
                    queue.append(x2)
        if free_dist == inf:
            break

        def augment(x: int) -> bool:
            # iterative DFS along the BFS layers
            stack = [(x, iter(adj[x]))]
            path: list[tuple[int, int]] = []
            while stack:
                cur, it = stack[-1]
                advanced = False
                for y in it:
                    x2 = mate_y.get(y)
                    if x2 is None:
                        if dist[cur] + 1 == free_dist:
                            path.append((cur, y))
                            for px, py in path:
                                mate_x[px] = py
                                mate_y[py] = px
                            return True
                    elif dist.get(x2) == dist[cur] + 1:
                        path.append((cur, y))
                        stack.append((x2, iter(adj[x2])))
                        advanced = True
                        break
                if not advanced:
                    dist[cur] = inf
                    stack.pop()
                    if path:
                        path.pop()
            return False

        progressed = False
        for x in xs:
            if mate_x[x] is None and augment(x):
                progressed = True
        if not progressed:
            break
    return {x: y for x, y in mate_x.items() if y is not None}


def max_matching(g: ColoredBipartiteGraph | GraphView) -> Matching:
    """Maximum-cardinality matching (Hopcroft-Karp, ascending vertex order)."""
    v = as_view(g)
    adj = {x: bits(v.xadj[x]) for x in v.xs}
    mate = _hopcroft_karp(v.xs, adj)
    return Matching(tuple(sorted(mate.items())))


def largest_connected_matching(g: ColoredBipartiteGraph | GraphView) -> ConnectedMatchingCertificate:
    """Component whose maximum matching saturates the most vertices.

    Ties go to the earlier component (components are ordered by their
    smallest vertex).  An edgeless view yields an empty certificate.
    """
    v = as_view(g)
    color = v.colors[0] if len(v.colors) == 1 else None
    best = ConnectedMatchingCertificate(color, frozenset(), Matching(()))
    for comp in components(v):
        xs, ys = split_sides(comp)
        m = max_matching(v.restrict(xs, ys))
        if m.saturated > best.saturated:
            best = ConnectedMatchingCertificate(color, comp, m)
    return best


def best_connected_matchings(g: ColoredBipartiteGraph) -> list[ConnectedMatchingCertificate]:
    """Largest connected matching of every color class, colors ``1..r`` in order."""
    return [largest_connected_matching(g.view(c)) for c in range(1, g.r + 1)]


def verify_connected_matching(g: ColoredBipartiteGraph, cert: ConnectedMatchingCertificate) -> Check:
    colors = None if cert.color is None else cert.color
    v = g.view(colors)
    if not is_matching(v, cert.matching):
        return Check(False, "not a matching of the color class")
    if not cert.matching.vertices() <= cert.component:
        return Check(False, "matching leaves the component")
    if cert.component:
        xs, ys = split_sides(cert.component)
        comps = components(v.restrict(xs, ys))
        if len(comps) != 1 or comps[0] != cert.component:
            return Check(False, "component is not connected in the color class")
    return Check(True)


# -- {S, T, U} decomposition ------------------------------------------------


def _lt_sqrt(a: int, n: int) -> bool:
    """``a < sqrt(n)`` in exact integer arithmetic."""
    return a < 0 or a * a < n


def verify_tutte(g: ColoredBipartiteGraph | GraphView, d: TutteDecomposition) -> Check:
    """Check the three decomposition properties against the view.

    ``|V|`` is the number of vertices of the view.  The triple must
    partition the view's vertex set.
    """
    v = as_view(g)
    V = set(v.vertices())
    n = len(V)
    S, T, U = d.S, d.T, d.U
    if S & T or S & U or T & U:
        return Check(False, "S, T, U are not disjoint")
    if S | T | U != V:
        return Check(False, "S, T, U do not cover the vertex set")
    tx, ty = split_sides(T)
    tmask_x = sum(1 << x for x in tx)
    tmask_y = sum(1 << y for y in ty)
    max_deg = 0
    for x in tx:
        max_deg = max(max_deg, (v.xadj[x] & tmask_y).bit_count())
    for y in ty:
        max_deg = max(max_deg, (v.yadj[y] & tmask_x).bit_count())
    if not _lt_sqrt(max_deg + 1, n):
        return Check(False, f"degree: induced max degree {max_deg} on T is not < sqrt({n}) - 1")
    ux, uy = split_sides(U)
    umask_x = sum(1 << x for x in ux)
    umask_y = sum(1 << y for y in uy)
    for x in tx:
        if v.xadj[x] & umask_y:
            return Check(False, f"T-U edge at x{x}")
    for y in ty:
        if v.yadj[y] & umask_x:
            return Check(False, f"T-U edge at y{y}")
    if not _lt_sqrt(len(U) + 2 * len(S) - d.alpha, n):
        return Check(False, f"size: |U| + 2|S| = {len(U) + 2 * len(S)} is not < {d.alpha} + sqrt({n})")
    return Check(True)


def gallai_edmonds(g: ColoredBipartiteGraph | GraphView, m: Matching | None = None):
    """Split the view's vertices into ``(D, A, C)``.

    ``D``: vertices missed by some maximum matching (even alternating-path
    reachable from an exposed vertex), ``A``: their neighbours outside ``D``,
    ``C``: the rest.
    """
    v = as_view(g)
    if m is None:
        m = max_matching(v)
    mate_x = dict(m.edges)
    mate_y = {y: x for x, y in m.edges}
    D: set[Vertex] = set()
    A: set[Vertex] = set()
    # from exposed X vertices: X at even distance -> D, Y at odd distance -> A
    for side in ("x", "y"):
        if side == "x":
            start = [x for x in v.xs if x not in mate_x]
            nbr, mate, mk_even, mk_odd = v.xadj, mate_y, X, Y
        else:
            start = [y for y in v.ys if y not in mate_y]
            nbr, mate, mk_even, mk_odd = v.yadj, mate_x, Y, X
        seen_even = set(start)
        seen_odd: set[int] = set()
        queue = deque(start)
        while queue:
            a = queue.popleft()
            for b in bits(nbr[a]):
                if b in seen_odd:
                    continue
                seen_odd.add(b)
                a2 = mate[b]  # b is matched, otherwise the matching was not maximum
                if a2 not in seen_even:
                    seen_even.add(a2)
                    queue.append(a2)
        D |= {mk_even(a) for a in seen_even}
        A |= {mk_odd(b) for b in seen_odd}
    C = set(v.vertices()) - D - A
    return D, A, C


def _split_components(v: GraphView, S: set[Vertex]) -> tuple[set[Vertex], set[Vertex]]:
    rest = set(v.vertices()) - S
    xs, ys = split_sides(rest)
    sub = v.restrict(xs, ys)
    n = len(v.vertices())
    T: set[Vertex] = set()
    U: set[Vertex] = set()
    covered: set[Vertex] = set()
    for comp in components(sub):
        covered |= comp
        (T if _lt_sqrt(len(comp), n) else U).update(comp)
    T |= rest - covered  # isolated vertices of the view minus S
    return T, U


def _exhaustive_tutte(v: GraphView, alpha: int) -> TutteDecomposition | None:
    verts = v.vertices()
    n = len(verts)
    for size in range(n + 1):
        for S in itertools.combinations(verts, size):
            S = set(S)
            rest = set(verts) - S
            xs, ys = split_sides(rest)
            sub = v.restrict(xs, ys)
            T: set[Vertex] = set()
            covered: set[Vertex] = set()
            for comp in components(sub):
                covered |= comp
                cx, cy = split_sides(comp)
                deg = max(
                    [sub.xadj[x].bit_count() for x in cx] + [sub.yadj[y].bit_count() for y in cy]
                )
                if _lt_sqrt(deg + 1, n):
                    T |= comp
            T |= rest - covered
            d = TutteDecomposition(frozenset(S), frozenset(T), frozenset(rest - T), alpha)
            if verify_tutte(v, d):
                return d
    return None


EXHAUSTIVE_TUTTE_LIMIT = 20


def tutte_partition(g: ColoredBipartiteGraph | GraphView, alpha: int) -> Matching | TutteDecomposition:
    """A matching saturating ``>= alpha`` vertices, or a decomposition proving none exists.

    ``S`` is the Gallai-Edmonds separator ``A``; the components of the view
    minus ``S`` with fewer than ``sqrt(|V|)`` vertices form ``T`` and the
    rest ``U``.  Should that triple fail :func:`verify_tutte`, views with at
    most 20 vertices are searched exhaustively; otherwise
    :class:`TutteNotFound` is raised.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    v = as_view(g)
    m = max_matching(v)
    if m.saturated >= alpha:
        return m
    _, A, _ = gallai_edmonds(v, m)
    T, U = _split_components(v, A)
    d = TutteDecomposition(frozenset(A), frozenset(T), frozenset(U), alpha)
    if verify_tutte(v, d):
        return d
    if len(v.vertices()) <= EXHAUSTIVE_TUTTE_LIMIT:
        found = _exhaustive_tutte(v, alpha)
        if found is not None:
            return found
    raise TutteNotFound(f"no verifiable decomposition for alpha={alpha} on {len(v.vertices())} vertices")
