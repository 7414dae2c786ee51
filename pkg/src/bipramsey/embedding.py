"""Long monochromatic cycles from connected matchings in a reduced graph.

The pipeline cuts the host graph into clusters, colors the reduced graph,
takes the largest connected matching ``M*`` of one color, walks around a
minimal tree containing ``M*`` and blows every matched step of the walk up
into a long path inside its cluster pair.  Every path and cycle handed back
is checked by an independent verifier first.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cycles import Check, CycleCertificate, verify_cycle
from .graph import ColoredBipartiteGraph, GraphError, GraphView, Vertex, X, Y, bits, components, min_degree
from .matching import ConnectedMatchingCertificate, largest_connected_matching
from .regularity import (
    DEGREE_RULE,
    MAJORITY_RULE,
    ClusterPartition,
    ReducedColoredGraph,
    as_fraction,
    density,
    is_eps_regular,
    reduced_graph,
)

log = logging.getLogger(__name__)


class EmbeddingFailure(RuntimeError):
    """The path search gave up.  ``hypotheses_hold`` records whether the pair
    density, both endpoint degrees and the range of ``l`` met the path lemma's
    requirements; ``flags`` has each check separately."""

    def __init__(self, message: str, hypotheses_hold: bool = False, flags: dict | None = None):
        super().__init__(message)
        self.hypotheses_hold = hypotheses_hold
        self.flags = flags or {}


class StitchInfeasible(GraphError):
    def __init__(self, message: str, interval: tuple[int, int]):
        super().__init__(message)
        self.interval = interval


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str, report: dict | None = None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.report = report or {}


# -- paths inside one pair ---------------------------------------------------


def max_path_parameter(m: int, beta: Fraction | float, eps: Fraction | float) -> int:
    """Largest ``l`` with ``l <= m - 5 eps m / beta``."""
    return math.floor(m - 5 * as_fraction(eps) * m / as_fraction(beta))


def verify_path(
    g: ColoredBipartiteGraph,
    color: int,
    path: Sequence[Vertex],
    start: Vertex,
    end: Vertex,
    edges: int,
    xs: Iterable[int] | None = None,
    ys: Iterable[int] | None = None,
) -> Check:
    """Simple path ``start .. end`` with ``edges`` edges of ``color`` (optionally inside ``xs``/``ys``)."""
    if len(path) != edges + 1:
        return Check(False, f"path has {len(path) - 1} edges, expected {edges}")
    if path[0] != start or path[-1] != end:
        return Check(False, "wrong endpoints")
    if len(set(path)) != len(path):
        return Check(False, "repetition: a vertex occurs twice")
    xs_s = None if xs is None else set(xs)
    ys_s = None if ys is None else set(ys)
    for v in path:
        if v.side == "x" and xs_s is not None and v.index not in xs_s:
            return Check(False, f"{v} leaves the pair")
        if v.side == "y" and ys_s is not None and v.index not in ys_s:
            return Check(False, f"{v} leaves the pair")
    for a, b in zip(path, path[1:]):
        if a.side == b.side:
            return Check(False, f"{a}-{b} joins one side")
        x, y = (a.index, b.index) if a.side == "x" else (b.index, a.index)
        if g.color(x, y) != color:
            return Check(False, f"edge color: {a}-{b}")
    return Check(True)


def pair_hypotheses(pair: GraphView, v1: Vertex, v2: Vertex, l: int, beta, eps) -> dict[str, bool]:
    """Checkable hypotheses of the path lemma for this pair and request."""
    beta, eps = as_fraction(beta), as_fraction(eps)
    m = min(len(pair.xs), len(pair.ys))
    floor_deg = beta * m / 5
    return {
        "density": density(pair, pair.xs, pair.ys) >= beta / 4,
        "degrees": pair.degree(v1) >= floor_deg and pair.degree(v2) >= floor_deg,
        "eps_small": eps < beta / 100,
        "l_range": 1 <= l <= max_path_parameter(m, beta, eps),
    }


def _rotation_extension(
    xadj: dict[int, int],
    yadj: dict[int, int],
    start: int,
    end_y: int,
    l: int,
    rng: np.random.Generator,
    max_steps: int,
) -> list[tuple[str, int]] | None:
    # grow x=start .. x_last with 2l edges, x_last adjacent to end_y, then close.
    full = 2 * l + 1
    path: list[int] = [start]  # sides alternate x, y, x, ...
    used = [1 << start, 0]  # used[0]: x mask, used[1]: y mask
    pos = [{start: 0}, {}]
    end_nbrs = yadj[end_y]

    def adj(side: int, v: int) -> int:
        return xadj[v] if side == 0 else yadj[v]

    def rotate(prefer) -> bool:
        L = len(path)
        e_side = (L - 1) % 2
        e = path[-1]
        inner = adj(e_side, e) & used[1 - e_side]
        opts = [pos[1 - e_side][w] for w in bits(inner)]
        opts = [i for i in opts if i != L - 2]
        if not opts:
            return False
        good = [i for i in opts if prefer(path[i + 1])]
        i = int(rng.choice(good if good else opts))
        tail = path[i + 1 :][::-1]
        path[i + 1 :] = tail
        for j in range(i + 1, L):
            pos[j % 2][path[j]] = j
        return True

    for _ in range(max_steps):
        L = len(path)
        side = (L - 1) % 2  # side of the current endpoint
        e = path[-1]
        if L == full:
            if end_nbrs >> e & 1:
                return [("x" if j % 2 == 0 else "y", v) for j, v in enumerate(path)] + [("y", end_y)]
            if not rotate(lambda w: bool(end_nbrs >> w & 1)):
                return None
            continue
        cand = adj(side, e) & ~used[1 - side]
        if L == full - 1:
            closing = cand & end_nbrs
            cand = closing or cand
        if cand:
            opts = bits(cand)
            # Warnsdorff: fewest onward options first, random among ties
            scores = [(adj(1 - side, w) & ~used[side]).bit_count() for w in opts]
            low = min(scores)
            pick = [w for w, s in zip(opts, scores) if s == low]
            w = int(rng.choice(pick))
            path.append(w)
            used[1 - side] |= 1 << w
            pos[1 - side][w] = L
            continue
        if rng.random() < 0.05 and L > 3:
            # drop a random tail; keeps the search from cycling through rotations
            cut = int(rng.integers(1, L // 2 + 1))
            for j in range(L - cut, L):
                used[j % 2] &= ~(1 << path[j])
                del pos[j % 2][path[j]]
            del path[L - cut :]
            continue
        if not rotate(lambda w: bool(adj(side, w) & ~used[1 - side])):
            return None
    return None


def connect_in_pair(
    pair: GraphView,
    v1: Vertex,
    v2: Vertex,
    l: int,
    beta: float | Fraction = 1,
    eps: float | Fraction = Fraction(1, 100),
    avoid: Iterable[Vertex] = (),
    seed: int = 0,
    attempts: int = 8,
) -> list[Vertex]:
    """Path with exactly ``2l + 1`` edges from ``v1`` to ``v2`` inside a single-color pair view.

    ``v1`` and ``v2`` must lie on opposite sides.  Vertices in ``avoid`` are
    not used.  The search is rotation-extension with a fixed start and a
    Warnsdorff tie-break, restarted up to ``attempts`` times; the result is
    verified before it is returned.  Raises :class:`EmbeddingFailure` when
    no path was found (distinct from the ``GraphError`` for bad requests).
    """
    if len(pair.colors) != 1:
        raise GraphError("connect_in_pair needs a single-color view")
    if v1.side == v2.side:
        raise GraphError(f"{v1} and {v2} are on the same side")
    if v1.side == "y":
        return connect_in_pair(pair, v2, v1, l, beta, eps, avoid, seed, attempts)[::-1]
    if v1.index not in pair.xadj or v2.index not in pair.yadj:
        raise GraphError("endpoints must lie in the pair")
    m = min(len(pair.xs), len(pair.ys))
    lmax = max_path_parameter(m, beta, eps)
    if not 1 <= l <= lmax:
        raise GraphError(f"l = {l} outside 1..{lmax}")
    flags = pair_hypotheses(pair, v1, v2, l, beta, eps)
    avoid = set(avoid) - {v1, v2}
    ax = sum(1 << v.index for v in avoid if v.side == "x")
    ay = sum(1 << v.index for v in avoid if v.side == "y") | (1 << v2.index)
    xadj = {x: pair.xadj[x] & ~ay for x in pair.xs if not ax >> x & 1}
    yadj = {y: pair.yadj[y] & ~ax for y in pair.ys}
    free_x = len(xadj)
    free_y = len(pair.ys) - bin(ay & pair.yset).count("1") + 1
    if free_x < l + 1 or free_y < l + 1:
        raise EmbeddingFailure(f"only {free_x}x{free_y} free vertices for l={l}", False, flags)
    color = pair.colors[0]
    for attempt in range(attempts):
        rng = np.random.default_rng([seed, attempt])
        got = _rotation_extension(xadj, yadj, v1.index, v2.index, l, rng, max_steps=40 * (2 * l + 2) + 200)
        if got is None:
            continue
        path = [Vertex(s, i) for s, i in got]
        if verify_path(pair.parent, color, path, v1, v2, 2 * l + 1, pair.xs, pair.ys) and not (set(path) & avoid):
            return path
    # instance hypotheses; the eps bound is a parameter choice and stays a flag
    hold = flags["density"] and flags["degrees"] and flags["l_range"]
    if hold:
        log.warning("falsification event: path lemma hypotheses hold but no path (l=%d, m=%d)", l, m)
    raise EmbeddingFailure(f"no path of length {2 * l + 1} found", hold, flags)


# -- walk plans --------------------------------------------------------------


@dataclass(frozen=True)
class WalkPlan:
    """Closed walk ``walk[0], ..., walk[t-1], walk[0]`` in one reduced color class.

    Vertices are cluster ids (``x i`` is ``X_i``).  Step ``s`` (numbered from
    1) goes from ``walk[s-1]`` to ``walk[s % t]``; ``matched`` lists the steps
    that are the first traversal of an ``M*`` edge.
    """

    color: int
    walk: tuple[Vertex, ...]
    matched: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.walk)

    def step(self, s: int) -> tuple[Vertex, Vertex]:
        return self.walk[s - 1], self.walk[s % self.t]

    def to_dict(self) -> dict:
        return {"color": self.color, "walk": [str(v) for v in self.walk], "matched": list(self.matched), "t": self.t}


def _edge_key(a: Vertex, b: Vertex) -> tuple[int, int]:
    return (a.index, b.index) if a.side == "x" else (b.index, a.index)


def verify_walk(h: ReducedColoredGraph, plan: WalkPlan, mstar_edges: Iterable[tuple[int, int]]) -> Check:
    """Independent check of the walk invariants."""
    if plan.t < 2 or plan.t % 2:
        return Check(False, f"walk length {plan.t} is not even and positive")
    first_pass: dict[tuple[int, int], int] = {}
    for s in range(1, plan.t + 1):
        a, b = plan.step(s)
        if a.side == b.side:
            return Check(False, f"step {s} stays on one side")
        key = _edge_key(a, b)
        if h.edges.get(key) != plan.color:
            return Check(False, f"step {s} is not a reduced edge of color {plan.color}")
        first_pass.setdefault(key, s)
    want = {first_pass.get(e) for e in mstar_edges}
    if None in want:
        return Check(False, "an M* edge is never traversed")
    if set(plan.matched) != want:
        return Check(False, "matched steps are not the first traversals of M*")
    return Check(True)


def walk_plan(h: ReducedColoredGraph, color: int, mstar: ConnectedMatchingCertificate | Iterable[tuple[int, int]]) -> WalkPlan:
    """Euler tour of the doubled minimal tree containing ``M*``.

    ``mstar`` is a certificate on the reduced color class or a list of
    ``(i, j)`` cluster pairs.  The tour starts from the smallest tree vertex
    and visits neighbours in ascending order.
    """
    mset = sorted(mstar.matching.edges if isinstance(mstar, ConnectedMatchingCertificate) else mstar)
    if not mset:
        raise GraphError("M* is empty")
    cls = h.color_class(color)
    comps = components(cls)
    home = [c for c in comps if X(mset[0][0]) in c]
    for i, j in mset:
        if h.edges.get((i, j)) != color:
            raise GraphError(f"({i},{j}) is not a reduced edge of color {color}")
        if not home or X(i) not in home[0] or Y(j) not in home[0]:
            raise GraphError("M* is not connected in the reduced color class")
    comp = home[0]

    # spanning tree of the component that contains M* (union-find, M* first)
    parent: dict[Vertex, Vertex] = {v: v for v in comp}

    def find(v: Vertex) -> Vertex:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree: dict[Vertex, set[Vertex]] = {v: set() for v in comp}
    for i, j in mset + [(i, j) for i, j, _ in cls.edges()]:
        a, b = X(i), Y(j)
        if a not in comp:
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree[a].add(b)
            tree[b].add(a)
    # prune leaves that carry no M* edge until the tree is minimal
    keep = {X(i) for i, _ in mset} | {Y(j) for _, j in mset}
    leaves = [v for v in tree if len(tree[v]) <= 1 and v not in keep]
    while leaves:
        v = leaves.pop()
        if v not in tree:
            continue
        for w in tree.pop(v):
            tree[w].discard(v)
            if len(tree[w]) <= 1 and w not in keep:
                leaves.append(w)
    mkeys = set(mset)
    root = min(tree)
    walk: list[Vertex] = []
    matched: list[int] = []
    seen_edges: set[tuple[int, int]] = set()

    def tour(v: Vertex, up: Vertex | None) -> None:
        walk.append(v)
        for w in sorted(tree[v]):
            if w == up:
                continue
            key = _edge_key(v, w)
            if key in mkeys and key not in seen_edges:
                matched.append(len(walk))  # step number of v -> w
            seen_edges.add(key)
            tour(w, v)
            walk.append(v)

    tour(root, None)
    walk.pop()  # the closing return to the root is implicit
    return WalkPlan(color, tuple(walk), tuple(matched))


# -- stitching ---------------------------------------------------------------


@dataclass(frozen=True)
class StitchPlan:
    ls: tuple[int, ...]
    t: int
    target: int

    @property
    def total(self) -> int:
        return sum(2 * l for l in self.ls) + self.t


def split_length(target: int, t: int, caps: Sequence[int]) -> StitchPlan:
    """Greedy largest-first split ``target = sum(2 l_j) + t`` with ``1 <= l_j <= caps[j]``."""
    a = len(caps)
    lo = t + 2 * a
    hi = t + 2 * sum(caps)
    if target % 2 or not lo <= target <= hi or any(c < 1 for c in caps):
        raise StitchInfeasible(f"target {target} outside feasible [{lo}, {hi}] (even)", (lo, hi))
    rest = (target - t) // 2
    ls = []
    for j, cap in enumerate(caps):
        l = min(cap, rest - (a - j - 1))
        ls.append(l)
        rest -= l
    return StitchPlan(tuple(ls), t, target)


def _cluster(p: ClusterPartition, v: Vertex) -> tuple[int, ...]:
    return p.x_clusters[v.index] if v.side == "x" else p.y_clusters[v.index]


def _choose_anchors(
    g: ColoredBipartiteGraph, color: int, p: ClusterPartition, plan: WalkPlan, max_nodes: int = 200000
) -> list[Vertex]:
    t = plan.t
    m = p.m
    xmask = [g.x_mask(x, color) for x in range(g.n1)]
    ymask = [g.y_mask(y, color) for y in range(g.n2)]
    cmask = {}
    for q, cl in enumerate(plan.walk):
        cmask[q] = sum(1 << i for i in _cluster(p, cl))
    matched = set(plan.matched)

    def nbr(v: Vertex) -> int:
        return xmask[v.index] if v.side == "x" else ymask[v.index]

    cands = []
    for q, cl in enumerate(plan.walk):
        prev_c, next_c = cmask[(q - 1) % t], cmask[(q + 1) % t]
        opts = []
        for i in _cluster(p, cl):
            v = Vertex(cl.side, i)
            a, b = (nbr(v) & prev_c).bit_count(), (nbr(v) & next_c).bit_count()
            if 5 * a >= m and 5 * b >= m:  # at least |V|/5 neighbours on both sides
                opts.append((-(a + b), i, v))
        opts.sort()
        cands.append([v for _, _, v in opts])

    chosen: list[Vertex] = []
    used: set[Vertex] = set()
    nodes = 0

    def ok(q: int, v: Vertex) -> bool:
        if v in used:
            return False
        if q > 0 and q not in matched and not nbr(chosen[q - 1]) >> v.index & 1:
            return False  # step q joins walk[q-1] -> walk[q]
        if q == t - 1 and t not in matched and not nbr(v) >> chosen[0].index & 1:
            return False
        return True

    def place(q: int) -> bool:
        nonlocal nodes
        if q == t:
            return True
        for v in cands[q]:
            nodes += 1
            if nodes > max_nodes:
                return False
            if ok(q, v):
                chosen.append(v)
                used.add(v)
                if place(q + 1):
                    return True
                used.discard(v)
                chosen.pop()
        return False

    if not place(0):
        raise EmbeddingFailure("no admissible anchor sequence along the walk")
    return chosen


def stitch_long_cycle(
    g: ColoredBipartiteGraph,
    p: ClusterPartition,
    h: ReducedColoredGraph,
    plan: WalkPlan,
    target: int,
    beta: float | Fraction = 1,
    eps: float | Fraction | None = None,
    seed: int = 0,
) -> CycleCertificate:
    """Monochromatic cycle of exactly ``target`` vertices following ``plan``.

    Raises :class:`StitchInfeasible` (carrying the feasible interval) when no
    admissible split of ``target`` exists, and :class:`EmbeddingFailure` when
    an anchor or path search fails.
    """
    eps = h.eps if eps is None else as_fraction(eps)
    color = plan.color
    t = plan.t
    m = p.m
    visits: dict[Vertex, int] = {}
    for cl in plan.walk:
        visits[cl] = visits.get(cl, 0) + 1
    lmax = max_path_parameter(m, beta, eps)
    caps = []
    for s in plan.matched:
        a, b = plan.step(s)
        caps.append(min(lmax, m - visits[a], m - visits[b]))
    split = split_length(target, t, caps)

    anchors = _choose_anchors(g, color, p, plan)
    pieces: list[list[Vertex]] = []
    lmap = dict(zip(plan.matched, split.ls))
    for s in range(1, t + 1):
        q0, q1 = s - 1, s % t
        if s in lmap:
            ca, cb = plan.step(s)
            xs_c = _cluster(p, ca if ca.side == "x" else cb)
            ys_c = _cluster(p, cb if cb.side == "y" else ca)
            pair = g.view(color, xs_c, ys_c)
            others = [v for q, v in enumerate(anchors) if q not in (q0, q1)]
            path = connect_in_pair(pair, anchors[q0], anchors[q1], lmap[s], beta, eps, others, seed=seed + s)
            pieces.append(path[:-1])
        else:
            pieces.append([anchors[q0]])
    seq = [v for piece in pieces for v in piece]
    if seq[0].side == "y":
        seq = seq[1:] + seq[:1]
    cert = CycleCertificate(color, tuple(seq))
    check = verify_cycle(g, cert)
    if not check:
        raise EmbeddingFailure(f"stitched cycle failed verification: {check.reason}")
    if cert.length != target:
        raise EmbeddingFailure(f"stitched cycle has length {cert.length}, expected {target}")
    return cert


# -- the whole pipeline ------------------------------------------------------


@dataclass
class PipelineResult:
    color: int
    certificate: CycleCertificate
    report: dict = field(default_factory=dict)


def implied_n(N: int, alphas: Sequence[float | Fraction], xi: float | Fraction) -> int:
    """Largest ``n`` with ``N >= (sum(alphas) + 8 xi) n``."""
    scale = sum(as_fraction(a) for a in alphas) + 8 * as_fraction(xi)
    return math.floor(N / scale)


def find_long_mono_cycle(
    g: ColoredBipartiteGraph,
    alpha1: float | Fraction,
    alpha2: float | Fraction,
    xi: float | Fraction,
    k: int = 6,
    eps: float | Fraction = Fraction(1, 100),
    n: int | None = None,
    min_degree_mode: bool = False,
    seed: int = 0,
    regularity_probes: int = 8,
    timing: bool = False,
) -> PipelineResult:
    """Find a monochromatic ``C_{2 floor(alpha_f n)}`` in some color ``f`` of a 2-coloring.

    ``n`` defaults to the largest value with ``N >= (alpha1 + alpha2 + 8 xi) n``;
    an explicit ``n`` violating that bound is rejected.  With
    ``min_degree_mode`` the host may be incomplete but must have minimum
    degree above ``(7/8 + 9 xi) N``; the reduced graph then uses the
    degree-form rule with ``d = xi``.  Every stage is recorded in
    ``report``; failures raise :class:`PipelineError` naming the stage.
    """
    t0 = time.perf_counter()
    a1, a2, xi_f, eps_f = (as_fraction(v) for v in (alpha1, alpha2, xi, eps))
    report: dict = {
        "params": {"alpha": [str(a1), str(a2)], "xi": str(xi_f), "eps": str(eps_f), "k": k, "seed": seed},
        "stages": {},
    }
    stages = report["stages"]

    def fail(stage: str, msg: str) -> PipelineError:
        stages[stage] = {"status": "failed", "reason": msg}
        return PipelineError(stage, msg, report)

    if g.r != 2 or g.n1 != g.n2:
        raise fail("precondition", "need a 2-colored graph with equal sides")
    N = g.n1
    scale = a1 + a2 + 8 * xi_f
    if min_degree_mode:
        delta = min_degree(g)
        if not delta > (Fraction(7, 8) + 9 * xi_f) * N:
            raise fail("precondition", f"min degree {delta} <= (7/8 + 9 xi) N")
    elif not g.complete:
        raise fail("precondition", "host graph is not complete")
    if n is None:
        n = implied_n(N, (a1, a2), xi_f)
    elif N < scale * n:
        raise fail("precondition", f"N = {N} < (alpha1 + alpha2 + 8 xi) n = {float(scale * n):.4g}")
    if n < 1:
        raise fail("precondition", f"implied n = {n} < 1")
    targets = {1: 2 * math.floor(a1 * n), 2: 2 * math.floor(a2 * n)}
    stages["precondition"] = {"status": "ok", "N": N, "n": n, "targets": {str(c): v for c, v in targets.items()}}

    try:
        p = ClusterPartition.uniform(N, N, k)
    except GraphError as exc:
        raise fail("partition", str(exc)) from exc
    m = p.m
    flags = {"irregular": 0, "unknown": 0}
    for i in range(k):
        for j in range(k):
            for c in (1, 2):
                res = is_eps_regular(
                    g.view(c), p.x_clusters[i], p.y_clusters[j], eps_f, mode="witness",
                    seed=seed * 7919 + (i * k + j) * 3 + c, probes=regularity_probes,
                )
                flags[res.status] = flags.get(res.status, 0) + 1
    stages["partition"] = {"status": "flagged" if flags["irregular"] else "ok", "m": m, "exceptional": len(p.x0), **flags}

    if min_degree_mode:
        h = reduced_graph(g, p, eps_f, xi_f, DEGREE_RULE)
    else:
        h = reduced_graph(g, p, eps_f, None, MAJORITY_RULE)
    stages["reduced"] = {
        "status": "ok",
        "rule": h.rule,
        "edges": {str(c): sum(1 for v in h.edges.values() if v == c) for c in (1, 2)},
        "audit": h.audit(),
    }

    kprime = Fraction(k) / scale
    mstars = {c: largest_connected_matching(h.color_class(c)) for c in (1, 2)}
    alphas = {1: a1, 2: a2}
    stages["matching"] = {
        "status": "ok",
        "saturated": {str(c): mstars[c].saturated for c in (1, 2)},
        "lemma_threshold_met": {
            str(c): mstars[c].saturated >= (2 * alphas[c] + Fraction(1, 10) * xi_f) * kprime for c in (1, 2)
        },
    }

    attempts = []
    for c in (1, 2):
        target = targets[c]
        entry: dict = {"color": c, "target": target}
        attempts.append(entry)
        if target < 4 or not mstars[c].matching.edges:
            entry["status"] = "skipped"
            continue
        plan = walk_plan(h, c, [(x.index, y.index) for x, y in _mstar_vertices(mstars[c])])
        a = len(plan.matched)
        chain = 2 * a * (1 - 5 * eps_f) * (1 - eps_f) * Fraction(N, k) + plan.t
        entry["walk_t"] = plan.t
        entry["matched_steps"] = a
        entry["length_accounting"] = 2 * a * (1 - 5 * eps_f) * m + plan.t >= chain
        try:
            cert = stitch_long_cycle(g, p, h, plan, target, 1, eps_f, seed=seed)
        except StitchInfeasible as exc:
            entry["status"] = "split infeasible"
            entry["interval"] = list(exc.interval)
            continue
        except EmbeddingFailure as exc:
            entry["status"] = "embedding failure"
            entry["reason"] = str(exc)
            continue
        entry["status"] = "ok"
        stages["stitch"] = {"status": "ok", "attempts": attempts}
        report["color"] = c
        report["certificate"] = cert.to_dict()
        report["verified"] = bool(verify_cycle(g, cert))
        if timing:
            report["seconds"] = round(time.perf_counter() - t0, 3)
        return PipelineResult(c, cert, report)
    stages["stitch"] = {"status": "failed", "attempts": attempts}
    raise PipelineError("stitch", "no color produced a verified cycle", report)


def _mstar_vertices(cert: ConnectedMatchingCertificate) -> list[tuple[Vertex, Vertex]]:
    # certificates on a reduced color class index clusters by vertex ids
    return [(X(x), Y(y)) for x, y in cert.matching.edges]
