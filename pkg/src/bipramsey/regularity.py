"""Densities, epsilon-regularity, typical vertices and reduced graphs.

All threshold comparisons are exact: densities are :class:`fractions.Fraction`
values and ``eps``/``d`` are converted with :func:`as_fraction` (floats go
through their shortest decimal repr, so ``0.1`` means ``1/10``).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .graph import ColoredBipartiteGraph, GraphError, GraphView, as_view

EXACT_LIMIT = 14

REGULAR = "regular"
IRREGULAR = "irregular"
UNKNOWN = "unknown"

DEGREE_RULE = "degree-form-d"
MAJORITY_RULE = "majority-half-eps"
RULES = (DEGREE_RULE, MAJORITY_RULE)


def as_fraction(value: float | int | str | Fraction) -> Fraction:
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def _submatrix(v: GraphView, A: Sequence[int], B: Sequence[int]) -> np.ndarray:
    return v.matrix[np.ix_(list(A), list(B))]


def density(g: ColoredBipartiteGraph | GraphView, A: Iterable[int], B: Iterable[int]) -> Fraction:
    """``e(A, B) / (|A| |B|)`` for ``A`` in X and ``B`` in Y, as an exact fraction."""
    A, B = sorted(set(A)), sorted(set(B))
    if not A or not B:
        raise GraphError("density needs non-empty A and B")
    v = as_view(g)
    e = int(_submatrix(v, A, B).sum())
    return Fraction(e, len(A) * len(B))


@dataclass(frozen=True)
class RegularityResult:
    status: str
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    deviation: Fraction | None = None

    @property
    def regular(self) -> bool:
        return self.status == REGULAR

    def to_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = {"A": list(self.witness[0]), "B": list(self.witness[1])}
            out["deviation"] = str(self.deviation)
        return out


def _min_size(eps: Fraction, n: int) -> int:
    """Smallest integer size strictly greater than ``eps * n``."""
    return int(np.floor(eps * n)) + 1


def _best_response(
    M: np.ndarray, rows: np.ndarray, e: int, eps: Fraction
) -> tuple[Fraction, tuple[int, ...]] | None:
    """Most deviating column subset for the fixed row subset ``rows`` (0/1 vector).

    For a fixed A' and |B'| = k the extreme densities come from the k columns
    of largest / smallest A'-degree, so scanning k covers every B'.
    """
    a, b = M.shape
    sa = int(rows.sum())
    if sa <= eps * a:
        return None
    deg = rows @ M
    kmin = _min_size(eps, b)
    if kmin > b:
        return None
    best = None
    # bottom first: sparse witnesses are preferred on ties
    for order in (np.argsort(deg, kind="stable"), np.argsort(-deg, kind="stable")):
        csum = np.cumsum(deg[order])
        for k in range(kmin, b + 1):
            dev = abs(Fraction(int(csum[k - 1]), sa * k) - Fraction(e, a * b))
            if best is None or dev > best[0]:
                best = (dev, tuple(sorted(int(j) for j in order[:k])))
    return best


def _exact(M: np.ndarray, eps: Fraction) -> RegularityResult:
    a, b = M.shape
    e = int(M.sum())
    p, q = eps.numerator, eps.denominator
    masks = np.arange(1 << a, dtype=np.int64)
    S = ((masks[:, None] >> np.arange(a)) & 1).astype(np.int64)
    sa = S.sum(axis=1)
    keep = sa * q > p * a
    S, sa, masks = S[keep], sa[keep], masks[keep]
    kmin = _min_size(eps, b)
    if not len(S) or kmin > b:
        return RegularityResult(REGULAR)
    deg = S @ M
    ab = a * b
    best = None
    for sign in (1, -1):  # ascending (bottom) then descending (top)
        srt = np.sort(sign * deg, axis=1) * sign
        csum = np.cumsum(srt, axis=1)
        for k in range(kmin, b + 1):
            ek = csum[:, k - 1]
            num = np.abs(ek * ab - e * sa * k)
            den = sa * k * ab
            viol = num * q > p * den
            if not viol.any():
                continue
            dev = num / den
            cand = np.flatnonzero(viol)
            top = dev[cand].max()
            for i in cand[dev[cand] >= top - 1e-12]:
                exact = Fraction(int(num[i]), int(den[i]))
                key = (exact, int(sa[i]) + k, -int(masks[i]))
                if best is None or key > best[0]:
                    best = (key, i, k, sign)
    if best is None:
        return RegularityResult(REGULAR)
    (dev, _, _), i, k, sign = best
    row_idx = tuple(int(t) for t in np.flatnonzero(S[i]))
    order = np.argsort(sign * deg[i], kind="stable")
    cols = tuple(sorted(int(j) for j in order[:k]))
    return RegularityResult(IRREGULAR, (row_idx, cols), dev)


def _verify_witness(v: GraphView, A, B, A2, B2, eps: Fraction) -> Fraction | None:
    if len(A2) <= eps * len(A) or len(B2) <= eps * len(B):
        return None
    if not set(A2) <= set(A) or not set(B2) <= set(B):
        return None
    dev = abs(density(v, A, B) - density(v, A2, B2))
    return dev if dev > eps else None


def is_eps_regular(
    g: ColoredBipartiteGraph | GraphView,
    A: Iterable[int],
    B: Iterable[int],
    eps: float | Fraction,
    mode: str = "exact",
    seed: int = 0,
    probes: int = 32,
) -> RegularityResult:
    """Decide (``mode="exact"``) or probe (``mode="witness"``) epsilon-regularity.

    Exact mode needs ``|A|, |B| <= 14`` and returns REGULAR or IRREGULAR with
    the most deviating witness.  Witness mode never claims regularity: it
    tries degree-sorted and seeded random row subsets, answers each with
    the exact best column subset, and returns IRREGULAR with a re-verified
    witness or UNKNOWN.
    """
    A, B = sorted(set(A)), sorted(set(B))
    if not A or not B:
        raise GraphError("regularity needs non-empty A and B")
    eps = as_fraction(eps)
    v = as_view(g)
    M = _submatrix(v, A, B).astype(np.int64)
    if mode == "exact":
        if len(A) > EXACT_LIMIT or len(B) > EXACT_LIMIT:
            raise GraphError(f"exact mode needs |A|, |B| <= {EXACT_LIMIT}")
        res = _exact(M, eps)
        if res.witness is not None:
            A2 = tuple(A[i] for i in res.witness[0])
            B2 = tuple(B[j] for j in res.witness[1])
            return RegularityResult(IRREGULAR, (A2, B2), res.deviation)
        return res
    if mode != "witness":
        raise GraphError(f"unknown mode {mode!r}")

    a, b = M.shape
    e = int(M.sum())
    rng = np.random.default_rng(seed)
    smin = _min_size(eps, a)
    if smin > a or _min_size(eps, b) > b:
        return RegularityResult(REGULAR)  # no admissible sub-pairs at all
    sizes = sorted({smin, max(smin, a // 4), max(smin, a // 2), max(smin, (3 * a) // 4)})
    rowdeg = M.sum(axis=1)
    candidates = []
    for s in sizes:
        for order in (np.argsort(-rowdeg, kind="stable"), np.argsort(rowdeg, kind="stable")):
            r = np.zeros(a, dtype=np.int64)
            r[order[:s]] = 1
            candidates.append(r)
    for _ in range(probes):
        s = int(rng.integers(smin, a + 1))
        r = np.zeros(a, dtype=np.int64)
        r[rng.choice(a, size=s, replace=False)] = 1
        candidates.append(r)
    best = None
    for rows in candidates:
        got = _best_response(M, rows, e, eps)
        if got is None or got[0] <= eps:
            continue
        if best is None or got[0] > best[0]:
            best = (got[0], rows, got[1])
    if best is None:
        return RegularityResult(UNKNOWN)
    _, rows, cols = best
    A2 = tuple(A[i] for i in np.flatnonzero(rows))
    B2 = tuple(B[j] for j in cols)
    dev = _verify_witness(v, A, B, A2, B2, eps)
    if dev is None:  # pragma: no cover - witnesses are exact by construction
        return RegularityResult(UNKNOWN)
    return RegularityResult(IRREGULAR, (A2, B2), dev)


def typical_vertices(
    g: ColoredBipartiteGraph | GraphView,
    A: Iterable[int],
    B_sub: Iterable[int],
    eps: float | Fraction,
    d: float | Fraction,
    side: str = "x",
) -> set[int]:
    """Vertices of ``A`` with more than ``(d - eps) |B_sub|`` neighbours in ``B_sub``.

    ``side`` says which side ``A`` lives on; ``B_sub`` is on the other side.
    """
    v = as_view(g)
    B_sub = list(set(B_sub))
    floor = (as_fraction(d) - as_fraction(eps)) * len(B_sub)
    bmask = sum(1 << j for j in B_sub)
    adj = v.xadj if side == "x" else v.yadj
    return {a for a in A if a in adj and (adj[a] & bmask).bit_count() > floor}


# -- cluster partitions and reduced graphs ------------------------------------


@dataclass(frozen=True)
class ClusterPartition:
    x_clusters: tuple[tuple[int, ...], ...]
    y_clusters: tuple[tuple[int, ...], ...]
    x0: tuple[int, ...] = ()
    y0: tuple[int, ...] = ()

    @property
    def k(self) -> int:
        return len(self.x_clusters)

    @property
    def m(self) -> int:
        return len(self.x_clusters[0]) if self.x_clusters else 0

    @classmethod
    def uniform(cls, n1: int, n2: int, k: int) -> ClusterPartition:
        """``k`` consecutive clusters of size ``m = min(n1, n2) // k`` per side.

        Leftover vertices become the exceptional sets; their sizes agree
        only when ``n1 == n2``.
        """
        if k < 1:
            raise GraphError(f"k must be >= 1, got {k}")
        m = min(n1, n2) // k
        if m < 1:
            raise GraphError(f"cannot cut {n1}x{n2} into {k} clusters")
        xc = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(k))
        yc = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(k))
        return cls(xc, yc, tuple(range(k * m, n1)), tuple(range(k * m, n2)))

    def validate(self, g: ColoredBipartiteGraph) -> None:
        if self.k < 1 or len(self.y_clusters) != self.k:
            raise GraphError("both sides need the same positive number of clusters")
        sizes = {len(c) for c in self.x_clusters + self.y_clusters}
        if len(sizes) != 1 or 0 in sizes:
            raise GraphError(f"clusters must share one positive size, got {sorted(sizes)}")
        if len(self.x0) != len(self.y0):
            raise GraphError(f"|X0| = {len(self.x0)} != |Y0| = {len(self.y0)}")
        for name, clusters, extra, n in (
            ("X", self.x_clusters, self.x0, g.n1),
            ("Y", self.y_clusters, self.y0, g.n2),
        ):
            seen = [i for c in clusters for i in c] + list(extra)
            if len(seen) != len(set(seen)):
                raise GraphError(f"side {name} clusters overlap")
            if set(seen) != set(range(n)):
                raise GraphError(f"side {name} clusters do not cover 0..{n - 1}")

    def to_text(self) -> str:
        lines = [f"clusters {self.k} {self.m}"]
        lines.append("X0" + "".join(f" {i}" for i in self.x0))
        lines += [f"X{i + 1} " + " ".join(map(str, c)) for i, c in enumerate(self.x_clusters)]
        lines.append("Y0" + "".join(f" {i}" for i in self.y0))
        lines += [f"Y{i + 1} " + " ".join(map(str, c)) for i, c in enumerate(self.y_clusters)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ClusterPartition:
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0][0] != "clusters" or len(lines[0]) != 3:
            raise GraphError("partition header must be 'clusters <k> <m>'")
        k, m = int(lines[0][1]), int(lines[0][2])
        rows: dict[str, tuple[int, ...]] = {}
        for parts in lines[1:]:
            rows[parts[0]] = tuple(int(t) for t in parts[1:])
        try:
            p = cls(
                tuple(rows[f"X{i}"] for i in range(1, k + 1)),
                tuple(rows[f"Y{i}"] for i in range(1, k + 1)),
                rows.get("X0", ()),
                rows.get("Y0", ()),
            )
        except KeyError as exc:
            raise GraphError(f"partition is missing cluster line {exc}") from exc
        if p.m != m:
            raise GraphError(f"header says m={m}, clusters have size {p.m}")
        return p

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | Path) -> ClusterPartition:
        return cls.from_text(Path(path).read_text())


@dataclass
class ReducedColoredGraph:
    """Colored graph on cluster indices ``0..k-1`` per side.

    ``edges[(i, j)]`` is the color of the reduced edge between ``X_i`` and
    ``Y_j``; absent pairs are not stored.  ``densities[(i, j)][c - 1]`` is
    the color-``c`` density of the pair, kept for auditing.
    """

    k: int
    r: int
    rule: str
    eps: Fraction
    d: Fraction | None
    edges: dict[tuple[int, int], int]
    densities: dict[tuple[int, int], tuple[Fraction, ...]]
    flags: dict[tuple[int, int], str] = field(default_factory=dict)

    def color_class(self, color: int) -> ColoredBipartiteGraph:
        """The reduced edges of one color as a ``k x k`` one-color graph."""
        arr = np.zeros((self.k, self.k), dtype=np.int16)
        for (i, j), c in self.edges.items():
            if c == color:
                arr[i, j] = 1
        return ColoredBipartiteGraph(arr, 1, complete=False)

    def as_graph(self) -> ColoredBipartiteGraph:
        arr = np.zeros((self.k, self.k), dtype=np.int16)
        for (i, j), c in self.edges.items():
            arr[i, j] = c
        return ColoredBipartiteGraph(arr, self.r, complete=False)

    def audit(self) -> bool:
        """Recompute every edge color from the stored densities."""
        for key, dens in self.densities.items():
            if _rule_color(self.rule, dens, self.eps, self.d) != self.edges.get(key, 0):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rule": self.rule,
            "eps": str(self.eps),
            "d": None if self.d is None else str(self.d),
            "edges": [[i, j, c] for (i, j), c in sorted(self.edges.items())],
            "densities": [[i, j, [str(x) for x in dens]] for (i, j), dens in sorted(self.densities.items())],
        }


def _rule_color(rule: str, dens: Sequence[Fraction], eps: Fraction, d: Fraction | None) -> int:
    if rule == MAJORITY_RULE:
        floor = Fraction(1, 2) - eps
        for c, x in enumerate(dens, start=1):
            if x >= floor:
                return c
        return 0
    # degree form: blue (color 2) first, then red
    if dens[1] >= d:
        return 2
    if dens[0] >= d:
        return 1
    return 0


def cluster_densities(g: ColoredBipartiteGraph, p: ClusterPartition) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    m = p.m
    xi = np.array(p.x_clusters)
    yi = np.array(p.y_clusters)
    out: dict[tuple[int, int], list[Fraction]] = {(i, j): [] for i in range(p.k) for j in range(p.k)}
    for c in range(1, g.r + 1):
        hit = (g.colors == c).astype(np.int64)
        # block sums: rows grouped by X cluster, columns by Y cluster
        rows = hit[xi.reshape(-1)].reshape(p.k, m, g.n2).sum(axis=1)
        blocks = rows[:, yi.reshape(-1)].reshape(p.k, p.k, m).sum(axis=2)
        for i in range(p.k):
            for j in range(p.k):
                out[(i, j)].append(Fraction(int(blocks[i, j]), m * m))
    return {key: tuple(v) for key, v in out.items()}


def reduced_graph(
    g: ColoredBipartiteGraph,
    p: ClusterPartition,
    eps: float | Fraction,
    d: float | Fraction | None,
    rule: str,
) -> ReducedColoredGraph:
    """Colored reduced graph of ``g`` over the clusters of ``p``.

    ``rule="degree-form-d"`` (2 colors only): blue (2) when the blue density
    is at least ``d``, otherwise red (1) when the red density is.
    ``rule="majority-half-eps"``: the lowest color whose density is at least
    ``1/2 - eps``.
    """
    if rule not in RULES:
        raise GraphError(f"unknown rule {rule!r}; choose one of {RULES}")
    if rule == DEGREE_RULE:
        if g.r != 2:
            raise GraphError("the degree-form rule needs a 2-colored graph")
        if d is None:
            raise GraphError("the degree-form rule needs d")
    p.validate(g)
    eps_f = as_fraction(eps)
    d_f = None if d is None else as_fraction(d)
    dens = cluster_densities(g, p)
    edges = {}
    for key, dd in dens.items():
        c = _rule_color(rule, dd, eps_f, d_f)
        if c:
            edges[key] = c
    return ReducedColoredGraph(p.k, g.r, rule, eps_f, d_f, edges, dens)
