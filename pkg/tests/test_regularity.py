from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipramsey import ClusterPartition, GraphError, density, is_eps_regular, reduced_graph, typical_vertices
from bipramsey.graph import ColoredBipartiteGraph, random_coloring
from bipramsey.regularity import DEGREE_RULE, IRREGULAR, MAJORITY_RULE, REGULAR, UNKNOWN, as_fraction

from oracles import naive_regular


def one_color(adj) -> ColoredBipartiteGraph:
    return ColoredBipartiteGraph(np.asarray(adj), 1)


def diagonal_blocks() -> ColoredBipartiteGraph:
    adj = np.zeros((10, 10), dtype=int)
    adj[:5, :5] = 1
    adj[5:, 5:] = 1
    return one_color(adj)


def test_density_examples():
    assert density(one_color(np.ones((3, 3))), range(3), range(3)) == 1
    assert density(one_color(np.zeros((3, 3))), range(3), range(3)) == 0
    assert density(one_color([[1, 1], [1, 0]]), [0, 1], [0, 1]) == Fraction(3, 4)
    with pytest.raises(GraphError):
        density(one_color([[1]]), [], [0])


def test_as_fraction_uses_decimal_repr():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("1/3") == Fraction(1, 3)


@pytest.mark.parametrize("eps", [0.05, 0.25, 0.5])
def test_complete_and_empty_pairs_are_regular(eps):
    for adj in (np.ones((6, 6)), np.zeros((6, 6))):
        assert is_eps_regular(one_color(adj), range(6), range(6), eps).status == REGULAR


def test_diagonal_blocks_irregular_with_verified_witness():
    g = diagonal_blocks()
    res = is_eps_regular(g, range(10), range(10), 0.25)
    assert res.status == IRREGULAR
    A2, B2 = res.witness
    assert (A2, B2) == (tuple(range(5)), tuple(range(5, 10)))
    assert abs(density(g, A2, B2) - density(g, range(10), range(10))) == res.deviation == Fraction(1, 2)


def test_witness_mode_finds_diagonal_blocks():
    g = diagonal_blocks()
    res = is_eps_regular(g, range(10), range(10), 0.25, mode="witness")
    assert res.status == IRREGULAR
    assert abs(density(g, *res.witness) - Fraction(1, 2)) > Fraction(1, 4)


def test_witness_mode_never_claims_regular_on_nontrivial_pairs():
    g = random_coloring(30, 30, 1, seed=4, p=0.5)
    assert is_eps_regular(g, range(30), range(30), 0.3, mode="witness").status in (IRREGULAR, UNKNOWN)


def test_mode_and_size_errors():
    g = random_coloring(20, 20, 1, seed=0)
    with pytest.raises(GraphError):
        is_eps_regular(g, range(20), range(20), 0.1)
    with pytest.raises(GraphError):
        is_eps_regular(g, range(3), range(3), 0.1, mode="bogus")


def test_typical_vertices_examples():
    full = one_color(np.ones((4, 4)))
    assert typical_vertices(full, range(4), [0, 1], 0.1, 1) == set(range(4))
    empty = one_color(np.zeros((4, 4)))
    assert typical_vertices(empty, range(4), range(4), 0.1, 0.5) == set()
    diag = diagonal_blocks()
    assert typical_vertices(diag, range(10), range(5), 0.25, 0.5) == set(range(5))
    assert typical_vertices(diag, range(10), range(5, 10), 0.25, 0.5, side="y") == set(range(5, 10))


def test_reduced_graph_examples():
    p = ClusterPartition.uniform(4, 4, 2)
    blue = ColoredBipartiteGraph(np.full((4, 4), 2), 2)
    h = reduced_graph(blue, p, 0.1, 0.5, DEGREE_RULE)
    assert set(h.edges.values()) == {2} and len(h.edges) == 4
    red = ColoredBipartiteGraph(np.ones((4, 4)), 2)
    h = reduced_graph(red, p, 0.1, 0.5, DEGREE_RULE)
    assert set(h.edges.values()) == {1} and len(h.edges) == 4
    half = ColoredBipartiteGraph(np.array([[1, 2], [2, 1]]), 2)
    h = reduced_graph(half, ClusterPartition.uniform(2, 2, 1), 0.05, None, MAJORITY_RULE)
    assert h.edges == {(0, 0): 1}
    assert h.audit()


def test_reduced_graph_rejections():
    g = random_coloring(6, 6, 3, seed=1)
    p = ClusterPartition.uniform(6, 6, 2)
    with pytest.raises(GraphError):
        reduced_graph(g, p, 0.1, 0.5, DEGREE_RULE)
    with pytest.raises(GraphError):
        reduced_graph(random_coloring(6, 6, 2, seed=1), p, 0.1, None, DEGREE_RULE)
    with pytest.raises(GraphError):
        reduced_graph(g, p, 0.1, None, "plurality")


def test_partition_text_round_trip_and_validation():
    p = ClusterPartition.uniform(13, 13, 3)
    assert p.m == 4 and p.x0 == (12,)
    assert ClusterPartition.from_text(p.to_text()) == p
    assert p.to_text().splitlines()[0] == "clusters 3 4"
    with pytest.raises(GraphError):
        ClusterPartition.from_text("clusters 2 3\nX1 0 1 2\nY1 0 1 2\n")
    bad = ClusterPartition(((0, 1), (1, 2)), ((0, 1), (2, 3)))
    with pytest.raises(GraphError, match="overlap"):
        bad.validate(random_coloring(4, 4, 2, seed=0))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1), st.sampled_from([0.1, 0.25, 0.5]))
def test_exact_mode_matches_full_enumeration(a, b, seed, eps):
    g = random_coloring(a + 2, b + 2, 1, seed, p=0.5)
    rng = np.random.default_rng(seed)
    A = sorted(rng.choice(a + 2, size=a, replace=False).tolist())
    B = sorted(rng.choice(b + 2, size=b, replace=False).tolist())
    res = is_eps_regular(g, A, B, eps)
    M = g.view(1).matrix[np.ix_(A, B)].astype(np.int64)
    assert (res.status == REGULAR) == naive_regular(M, as_fraction(eps))
    if res.status == IRREGULAR:
        A2, B2 = res.witness
        assert set(A2) <= set(A) and set(B2) <= set(B)
        assert abs(density(g, A2, B2) - density(g, A, B)) == res.deviation > as_fraction(eps)


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 8), st.integers(0, 2**32 - 1), st.sampled_from([0.1, 0.25, 0.5]))
def test_regular_pairs_have_few_atypical_vertices(n, seed, eps):
    # a regular pair of density >= d has at most eps|A| vertices of degree <= (d - eps)|B'|
    g = random_coloring(n, n, 1, seed, p=0.8)
    res = is_eps_regular(g, range(n), range(n), eps)
    if res.status != REGULAR:
        return
    d = density(g, range(n), range(n))
    e = as_fraction(eps)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        size = int(rng.integers(int(e * n) + 1, n + 1))
        B_sub = rng.choice(n, size=size, replace=False).tolist()
        # typical_vertices uses a strict floor; the guarantee is for >= (d - eps)|B'|
        low = [x for x in range(n) if g.view(1).matrix[x, B_sub].sum() < (d - e) * size]
        assert len(low) <= e * n
        assert set(typical_vertices(g, range(n), B_sub, e, d)) <= set(range(n)) - set(low)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.05, 0.2]))
def test_reduced_graph_audit(n, k, seed, eps):
    if n < k:
        return
    g = random_coloring(n, n, 2, seed)
    p = ClusterPartition.uniform(n, n, k)
    for rule, d in ((MAJORITY_RULE, None), (DEGREE_RULE, 0.3)):
        h = reduced_graph(g, p, eps, d, rule)
        assert h.audit()
        for (i, j), dens in h.densities.items():
            A, B = p.x_clusters[i], p.y_clusters[j]
            assert dens == tuple(density(g.view(c), A, B) for c in (1, 2))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_density_splits_additively(n, seed):
    g = random_coloring(n, n, 1, seed, p=0.5)
    A, B = range(n), list(range(n))
    B1, B2 = B[: n // 2], B[n // 2 :]
    whole = density(g, A, B)
    assert whole == (density(g, A, B1) * len(B1) + density(g, A, B2) * len(B2)) / n
    perm = np.random.default_rng(seed).permutation(n)
    h = ColoredBipartiteGraph(g.colors[perm][:, perm], 1)
    assert density(h, A, B) == whole
