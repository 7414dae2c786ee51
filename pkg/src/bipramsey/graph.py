"""Edge-colored bipartite graphs.

A :class:`ColoredBipartiteGraph` stores one color id per vertex pair of
``X x Y`` (``0`` meaning the pair is not an edge) and caches, per color,
row bitmasks so neighbourhood queries reduce to integer ``&``/``|``.
A :class:`GraphView` restricts a graph to a subset of colors and vertices
without copying.
"""

from __future__ import annotations

from collections.abc import Iterable
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np


class GraphError(ValueError):
    """Raised when a graph or one of its inputs is malformed."""


class Vertex(NamedTuple):
    side: str  # "x" or "y"
    index: int

    def __str__(self) -> str:
        return f"{self.side}{self.index}"


def X(i: int) -> Vertex:
    return Vertex("x", i)


def Y(j: int) -> Vertex:
    return Vertex("y", j)


def parse_vertex(text: str) -> Vertex:
    """Parse ``"x3"`` / ``"y0"`` into a :class:`Vertex`."""
    if len(text) < 2 or text[0] not in "xy" or not text[1:].isdigit():
        raise GraphError(f"bad vertex name {text!r}")
    return Vertex(text[0], int(text[1:]))


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class ColoredBipartiteGraph:
    """An r-edge-colored bipartite graph on sides of sizes ``n1`` and ``n2``.

    ``colors[x, y]`` is the color of the edge ``x y`` or ``0`` when absent.
    Instances are immutable; the underlying array is marked read-only.
    """

    def __init__(self, colors: np.ndarray, r: int, complete: bool | None = None):
        arr = np.array(colors, dtype=np.int16, copy=True)
        if arr.ndim != 2:
            raise GraphError("color matrix must be two-dimensional")
        n1, n2 = arr.shape
        if n1 < 1 or n2 < 1:
            raise GraphError(f"sides must be non-empty, got {n1}x{n2}")
        if r < 1:
            raise GraphError(f"color count must be >= 1, got {r}")
        bad = np.argwhere((arr < 0) | (arr > r))
        if len(bad):
            x, y = (int(v) for v in bad[0])
            raise GraphError(f"color {int(arr[x, y])} at ({x},{y}) outside 0..{r}")
        has_gap = bool((arr == 0).any())
        if complete is None:
            complete = not has_gap
        elif complete and has_gap:
            x, y = (int(v) for v in np.argwhere(arr == 0)[0])
            raise GraphError(f"complete graph has absent pair ({x},{y})")
        arr.setflags(write=False)
        self.colors = arr
        self.r = int(r)
        self.complete = bool(complete)

    @property
    def n1(self) -> int:
        return self.colors.shape[0]

    @property
    def n2(self) -> int:
        return self.colors.shape[1]

    def __repr__(self) -> str:
        mode = "complete" if self.complete else "partial"
        return f"ColoredBipartiteGraph({self.n1}x{self.n2}, r={self.r}, {mode})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredBipartiteGraph):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.colors, other.colors)

    def __hash__(self) -> int:
        return hash((self.r, self.colors.shape, self.colors.tobytes()))

    def color(self, x: int, y: int) -> int:
        return int(self.colors[x, y])

    @cached_property
    def _row_masks(self) -> list[list[int]]:
        # _row_masks[c][x]: bitmask over Y of color-c neighbours of x (c=0 unused)
        out = [[0] * self.n1 for _ in range(self.r + 1)]
        for c in range(1, self.r + 1):
            hit = self.colors == c
            for x in range(self.n1):
                out[c][x] = mask_of(np.flatnonzero(hit[x]).tolist())
        return out

    @cached_property
    def _col_masks(self) -> list[list[int]]:
        out = [[0] * self.n2 for _ in range(self.r + 1)]
        for c in range(1, self.r + 1):
            hit = self.colors == c
            for y in range(self.n2):
                out[c][y] = mask_of(np.flatnonzero(hit[:, y]).tolist())
        return out

    def x_mask(self, x: int, color: int) -> int:
        return self._row_masks[color][x]

    def y_mask(self, y: int, color: int) -> int:
        return self._col_masks[color][y]

    def edge_count(self, color: int | None = None) -> int:
        if color is None:
            return int((self.colors > 0).sum())
        return int((self.colors == color).sum())

    def view(
        self,
        colors: Iterable[int] | int | None = None,
        xs: Iterable[int] | None = None,
        ys: Iterable[int] | None = None,
    ) -> GraphView:
        return GraphView(self, colors, xs, ys)

    def edges(self, color: int | None = None) -> list[tuple[int, int, int]]:
        sel = self.colors > 0 if color is None else self.colors == color
        return [(int(x), int(y), int(self.colors[x, y])) for x, y in np.argwhere(sel)]

    # text format -----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"bcg {self.n1} {self.n2} {self.r}"]
        lines += [" ".join(str(int(c)) for c in row) for row in self.colors]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ColoredBipartiteGraph:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise GraphError("empty graph text")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "bcg":
            raise GraphError(f"bad header {lines[0]!r}; expected 'bcg <n1> <n2> <r>'")
        try:
            n1, n2, r = (int(v) for v in head[1:])
        except ValueError as exc:
            raise GraphError(f"bad header {lines[0]!r}") from exc
        if len(lines) != n1 + 1:
            raise GraphError(f"expected {n1} rows, found {len(lines) - 1}")
        rows = []
        for k, ln in enumerate(lines[1:]):
            vals = ln.split()
            if len(vals) != n2:
                raise GraphError(f"row {k} has {len(vals)} entries, expected {n2}")
            try:
                rows.append([int(v) for v in vals])
            except ValueError as exc:
                raise GraphError(f"row {k} is not integral: {ln!r}") from exc
        return cls(np.array(rows, dtype=np.int16).reshape(n1, n2), r)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | Path) -> ColoredBipartiteGraph:
        return cls.from_text(Path(path).read_text())


def build_graph(
    n1: int,
    n2: int,
    r: int,
    assignment: Iterable[tuple[int, int, int]],
    complete: bool | None = None,
) -> ColoredBipartiteGraph:
    """Build a graph from ``(x, y, color)`` triples; unlisted pairs are absent.

    Raises :class:`GraphError` naming the first offending entry (index out of
    range, color outside ``0..r`` or a pair listed twice).
    """
    if n1 < 1 or n2 < 1:
        raise GraphError(f"sides must be non-empty, got {n1}x{n2}")
    if r < 1:
        raise GraphError(f"color count must be >= 1, got {r}")
    arr = np.zeros((n1, n2), dtype=np.int16)
    seen = set()
    for entry in assignment:
        x, y, c = entry
        if not (0 <= x < n1 and 0 <= y < n2):
            raise GraphError(f"vertex index out of range in entry {entry}")
        if not 0 <= c <= r:
            raise GraphError(f"color out of range in entry {entry}")
        if (x, y) in seen:
            raise GraphError(f"duplicate pair in entry {entry}")
        seen.add((x, y))
        arr[x, y] = c
    return ColoredBipartiteGraph(arr, r, complete)


def random_coloring(n1: int, n2: int, r: int, seed: int = 0, p: float = 1.0) -> ColoredBipartiteGraph:
    """Uniform random ``r``-coloring; each pair is kept with probability ``p``."""
    rng = np.random.default_rng(seed)
    colors = rng.integers(1, r + 1, size=(n1, n2), dtype=np.int16)
    if p < 1.0:
        colors[rng.random((n1, n2)) >= p] = 0
        return ColoredBipartiteGraph(colors, r)
    return ColoredBipartiteGraph(colors, r, complete=True)


class GraphView:
    """Read-only restriction of a graph to some colors and vertex subsets."""

    def __init__(
        self,
        parent: ColoredBipartiteGraph,
        colors: Iterable[int] | int | None = None,
        xs: Iterable[int] | None = None,
        ys: Iterable[int] | None = None,
    ):
        if colors is None:
            cs = tuple(range(1, parent.r + 1))
        elif isinstance(colors, int):
            cs = (colors,)
        else:
            cs = tuple(sorted(set(colors)))
        for c in cs:
            if not 1 <= c <= parent.r:
                raise GraphError(f"color {c} outside 1..{parent.r}")
        xs_t = tuple(range(parent.n1)) if xs is None else tuple(sorted(set(xs)))
        ys_t = tuple(range(parent.n2)) if ys is None else tuple(sorted(set(ys)))
        if any(not 0 <= x < parent.n1 for x in xs_t) or any(not 0 <= y < parent.n2 for y in ys_t):
            raise GraphError("view vertex subset out of range")
        self.parent = parent
        self.colors = cs
        self.xs = xs_t
        self.ys = ys_t
        self.xset = mask_of(xs_t)
        self.yset = mask_of(ys_t)

    def __repr__(self) -> str:
        return f"GraphView(colors={self.colors}, |X|={len(self.xs)}, |Y|={len(self.ys)})"

    @cached_property
    def xadj(self) -> dict[int, int]:
        """``xadj[x]``: bitmask over Y of view-neighbours of ``x``."""
        out = {}
        for x in self.xs:
            m = 0
            for c in self.colors:
                m |= self.parent.x_mask(x, c)
            out[x] = m & self.yset
        return out

    @cached_property
    def yadj(self) -> dict[int, int]:
        out = {}
        for y in self.ys:
            m = 0
            for c in self.colors:
                m |= self.parent.y_mask(y, c)
            out[y] = m & self.xset
        return out

    @cached_property
    def matrix(self) -> np.ndarray:
        """0/1 adjacency on the full ``n1 x n2`` index space (outside the view is 0)."""
        g = self.parent
        a = np.isin(g.colors, self.colors)
        keep_x = np.zeros(g.n1, dtype=bool)
        keep_x[list(self.xs)] = True
        keep_y = np.zeros(g.n2, dtype=bool)
        keep_y[list(self.ys)] = True
        return (a & keep_x[:, None] & keep_y[None, :]).astype(np.int64)

    def has_edge(self, x: int, y: int) -> bool:
        return x in self.xadj and bool(self.xadj[x] >> y & 1)

    def degree(self, v: Vertex) -> int:
        if v.side == "x":
            return self.xadj[v.index].bit_count() if v.index in self.xadj else 0
        return self.yadj[v.index].bit_count() if v.index in self.yadj else 0

    def vertices(self) -> list[Vertex]:
        return [X(x) for x in self.xs] + [Y(y) for y in self.ys]

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in self.xs for y in bits(self.xadj[x])]

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.xadj.values())

    def restrict(self, xs: Iterable[int], ys: Iterable[int]) -> GraphView:
        keep_x = set(xs) & set(self.xs)
        keep_y = set(ys) & set(self.ys)
        return GraphView(self.parent, self.colors, keep_x, keep_y)


def as_view(g: ColoredBipartiteGraph | GraphView) -> GraphView:
    return g if isinstance(g, GraphView) else g.view()


def min_degree(g: ColoredBipartiteGraph | GraphView) -> int:
    """Smallest number of present edges at any vertex of either side."""
    v = as_view(g)
    degs = [m.bit_count() for m in v.xadj.values()] + [m.bit_count() for m in v.yadj.values()]
    return min(degs) if degs else 0


def components(g: ColoredBipartiteGraph | GraphView) -> list[frozenset[Vertex]]:
    """Connected components of the non-isolated vertices of a view.

    Components are ordered by their smallest vertex (``x`` vertices sort
    before ``y`` vertices, then by index).
    """
    v = as_view(g)
    seen_x = 0
    seen_y = 0
    comps = []
    for start in [X(x) for x in v.xs] + [Y(y) for y in v.ys]:
        if start.side == "x":
            if seen_x >> start.index & 1 or not v.xadj[start.index]:
                continue
            fx, fy = 1 << start.index, 0
        else:
            if seen_y >> start.index & 1 or not v.yadj[start.index]:
                continue
            fx, fy = 0, 1 << start.index
        cx, cy = fx, fy
        while fx or fy:
            ny = 0
            for x in bits(fx):
                ny |= v.xadj[x]
            nx = 0
            for y in bits(fy):
                nx |= v.yadj[y]
            fx = nx & ~cx
            fy = ny & ~cy
            cx |= fx
            cy |= fy
        seen_x |= cx
        seen_y |= cy
        comps.append(frozenset([X(i) for i in bits(cx)] + [Y(j) for j in bits(cy)]))
    comps.sort(key=min)
    return comps


def split_sides(vs: Iterable[Vertex]) -> tuple[list[int], list[int]]:
    xs = sorted(v.index for v in vs if v.side == "x")
    ys = sorted(v.index for v in vs if v.side == "y")
    return xs, ys
