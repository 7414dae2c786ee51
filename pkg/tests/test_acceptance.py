"""Acceptance suite: one test (or one parametrized group) per criterion.

Each ``criterion_*`` function is a pure function of its seed and returns
``(passed, detail, records)``.  The tests write ``records`` as JSON into the
acceptance run directory (``BIPRAMSEY_ACCEPTANCE_DIR`` or a pytest temp dir)
so that ``bipramsey report`` can tabulate them, and criterion 10 re-runs the
functions to compare bytes.
"""

from __future__ import annotations

import itertools
import json
import math
import statistics
import time
from fractions import Fraction

import numpy as np
import pytest

from bipramsey import (
    Budget,
    PipelineError,
    X,
    Y,
    best_connected_matchings,
    bramsey,
    connect_in_pair,
    find_cycle_of_length,
    find_long_mono_cycle,
    is_eps_regular,
    is_good_coloring,
    max_matching,
    min_degree,
    tutte_partition,
    verify_connected_matching,
    verify_cycle,
    verify_path,
    verify_tutte,
)
from bipramsey.constructions import h_tilde, lower_bound_coloring
from bipramsey.embedding import EmbeddingFailure
from bipramsey.graph import ColoredBipartiteGraph, random_coloring
from bipramsey.matching import TutteDecomposition, TutteNotFound
from bipramsey.regularity import IRREGULAR, REGULAR, as_fraction, density

from conftest import record_criterion
from oracles import kuhn_matching, naive_regular

XI = Fraction(1, 20)


def dump(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def write_artifact(run_dir, name: str, records: list[dict]) -> None:
    (run_dir / f"{name}.jsonl").write_text(dump(records))


def finish(run_dir, criterion: int | str, passed: bool, detail: str, records: list[dict]) -> None:
    write_artifact(run_dir, f"criterion-{criterion}", records)
    record_criterion(criterion, passed, detail)
    (run_dir / f"acceptance-{criterion}.json").write_text(
        json.dumps({"kind": "acceptance", "criterion": str(criterion), "passed": passed, "detail": detail}, sort_keys=True)
    )


# -- 1: lower-bound construction grid ----------------------------------------


def criterion_1() -> tuple[bool, str, list[dict]]:
    records, failures = [], 0
    for r in (2, 3):
        for ns in itertools.product(range(2, 7), repeat=r):
            g = lower_bound_coloring(ns)
            for k, n in enumerate(ns, start=1):
                absent = find_cycle_of_length(g.view(k), 2 * n) is None
                failures += not absent
                records.append({"kind": "construction-check", "construction": "lower-bound", "params": list(ns),
                                "min_degree": min_degree(g), "forbidden_length": 2 * n, "color": k, "absent": absent})
    return failures == 0, f"{failures} failures over {len(records)} color classes", records


def test_criterion_1_lower_bound_grid(run_dir):
    t0 = time.perf_counter()
    passed, detail, records = criterion_1()
    dt = time.perf_counter() - t0
    passed = passed and dt < 60
    finish(run_dir, 1, passed, f"{detail}, {dt:.1f}s", records)
    assert passed


# -- 2: H-tilde properties ---------------------------------------------------


def criterion_2(n: int) -> tuple[bool, str, list[dict]]:
    g = h_tilde(n)
    delta = min_degree(g)
    records, found = [], []
    for color in (1, 2):
        cert = find_cycle_of_length(g.view(color), 4 * n)
        records.append({"kind": "construction-check", "construction": "h-tilde", "params": [n], "min_degree": delta,
                        "forbidden_length": 4 * n, "color": color, "absent": cert is None,
                        "witness": None if cert is None else cert.to_dict()})
        if cert is not None:
            assert verify_cycle(g, cert)
            found.append(f"color {color} has C_{4 * n}: {' '.join(str(v) for v in cert.vertices)}")
    passed = delta == 3 * n and not found
    detail = f"n={n}: min degree {delta} (want {3 * n}); " + ("; ".join(found) if found else "no monochromatic cycle")
    return passed, detail, records


@pytest.mark.parametrize("n", [1, 2, 3])
def test_criterion_2_h_tilde(run_dir, n):
    t0 = time.perf_counter()
    passed, detail, records = criterion_2(n)
    dt = time.perf_counter() - t0
    passed = passed and dt < 300
    finish(run_dir, f"2-n{n}", passed, f"{detail}, {dt:.1f}s", records)
    assert passed, detail


# -- 3: small Ramsey values --------------------------------------------------


def criterion_3() -> tuple[bool, str, list[dict]]:
    records, parts, ok = [], [], True
    for lengths, want, nmax in (([8, 4], 5, 6), ([10, 4], 6, 7)):
        val = bramsey(lengths, nmax, budget_factory=lambda: Budget(max_seconds=3600))
        rec = val.to_dict()
        rec["kind"] = "ramsey-value"
        records.append(rec)
        cert_ok = val.certificate is not None and val.certificate.n1 == want - 1 and is_good_coloring(val.certificate, lengths)
        if val.value is not None:
            good = val.value == want
        else:
            # an exhausted budget is tolerated only at the larger instance
            lo, hi = val.interval
            good = want == 6 and lo <= want and (hi is None or want <= hi)
        ok &= good and cert_ok
        parts.append(f"{lengths}: value {val.value} interval {list(val.interval)} certificate {'ok' if cert_ok else 'bad'}")
    return ok, "; ".join(parts), records


def test_criterion_3_ramsey_values(run_dir):
    passed, detail, records = criterion_3()
    finish(run_dir, 3, passed, detail, records)
    assert passed


# -- 4: matching oracle ------------------------------------------------------


def criterion_4(seed: int = 0, count: int = 1000) -> tuple[bool, str, list[dict]]:
    rng = np.random.default_rng(seed)
    bad = 0
    records = []
    for i in range(count):
        n1, n2 = (int(v) for v in rng.integers(1, 51, size=2))
        p = float(rng.uniform(0.0, 0.3))
        adj = (rng.random((n1, n2)) < p).astype(np.int16)
        ours = max_matching(ColoredBipartiteGraph(adj, 1)).size
        ref = kuhn_matching(adj)
        bad += ours != ref
        records.append({"i": i, "n1": n1, "n2": n2, "size": ours, "oracle": ref})
    return bad == 0, f"{bad} disagreements over {count} graphs", records


def test_criterion_4_matching_oracle(run_dir):
    passed, detail, records = criterion_4()
    finish(run_dir, 4, passed, detail, records)
    assert passed


# -- 5: {S, T, U} dichotomy --------------------------------------------------


def criterion_5(seed: int = 0, count: int = 1000) -> tuple[bool, str, list[dict]]:
    rng = np.random.default_rng(seed)
    failures = not_found = small = 0
    records = []
    for i in range(count):
        # a quarter of the views are small enough for the exhaustive fallback
        hi = 11 if i % 4 == 0 else 101
        n1, n2 = (int(v) for v in rng.integers(1, hi, size=2))
        p = float(rng.choice([0.002, 0.01, 0.03, 0.08, 0.2, 0.5]))
        adj = (rng.random((n1, n2)) < p).astype(np.int16)
        view = ColoredBipartiteGraph(adj, 1).view(1)
        nu = max_matching(view).size
        small += n1 + n2 <= 20
        try:
            d = tutte_partition(view, 2 * nu + 1)
        except TutteNotFound:
            not_found += 1
            records.append({"i": i, "n1": n1, "n2": n2, "nu": nu, "outcome": "not-found"})
            continue
        ok = isinstance(d, TutteDecomposition) and bool(verify_tutte(view, d))
        failures += not ok
        records.append({"i": i, "n1": n1, "n2": n2, "nu": nu, "outcome": "decomposition" if ok else "failed",
                        "sizes": [len(d.S), len(d.T), len(d.U)] if isinstance(d, TutteDecomposition) else None})
    passed = failures == 0 and not_found == 0
    return passed, f"{failures} failures, {not_found} not-found over {count} views ({small} small)", records


def test_criterion_5_tutte_dichotomy(run_dir):
    passed, detail, records = criterion_5()
    finish(run_dir, 5, passed, detail, records)
    assert passed


# -- 6: regularity oracle ----------------------------------------------------


def criterion_6(seed: int = 0, count: int = 500) -> tuple[bool, str, list[dict]]:
    rng = np.random.default_rng(seed)
    disagree = false_irregular = 0
    records = []
    for i in range(count):
        n1, n2 = (int(v) for v in rng.integers(1, 9, size=2))
        p = float(rng.uniform(0.05, 0.95))
        adj = (rng.random((n1, n2)) < p).astype(np.int16)
        g = ColoredBipartiteGraph(adj, 1)
        for eps in ("0.1", "0.25", "0.5"):
            e = as_fraction(eps)
            want = naive_regular(adj.astype(np.int64), e)
            exact = is_eps_regular(g, range(n1), range(n2), e)
            disagree += (exact.status == REGULAR) != want
            probe = is_eps_regular(g, range(n1), range(n2), e, mode="witness", seed=i)
            if probe.status == IRREGULAR:
                A2, B2 = probe.witness
                dev = abs(density(g, A2, B2) - density(g, range(n1), range(n2)))
                if want or dev <= e or len(A2) <= e * n1 or len(B2) <= e * n2:
                    false_irregular += 1
            elif probe.status == REGULAR:
                false_irregular += 1  # witness mode must never claim regularity
            records.append({"i": i, "eps": eps, "exact": exact.status, "witness": probe.status, "oracle": want})
    passed = disagree == 0 and false_irregular == 0
    return passed, f"{disagree} disagreements, {false_irregular} false witness answers over {3 * count} checks", records


def test_criterion_6_regularity_oracle(run_dir):
    passed, detail, records = criterion_6()
    finish(run_dir, 6, passed, detail, records)
    assert passed


# -- 7: path embedding -------------------------------------------------------


def criterion_7(seeds: range = range(100), ls: tuple[int, ...] = (1, 25, 50, 90)) -> tuple[bool, str, list[dict]]:
    m, beta, eps = 100, 1, Fraction(1, 100)
    ok = falsified = total = 0
    records = []
    for seed in seeds:
        rng = np.random.default_rng([7, seed])
        p = float(rng.uniform(0.3, 0.75))
        g = random_coloring(m, m, 1, seed=seed, p=p)
        pair = g.view(1)
        assert Fraction(pair.edge_count(), m * m) >= Fraction(1, 4)
        M = g.colors == 1
        floor = math.ceil(Fraction(beta) * m / 5)
        a = int(rng.choice(np.flatnonzero(M.sum(1) >= floor)))
        b = int(rng.choice(np.flatnonzero(M.sum(0) >= floor)))
        for l in ls:
            total += 1
            try:
                path = connect_in_pair(pair, X(a), Y(b), l, beta=beta, eps=eps, seed=seed)
                good = bool(verify_path(g, 1, path, X(a), Y(b), 2 * l + 1))
                ok += good
                records.append({"seed": seed, "l": l, "ends": [a, b], "outcome": "path" if good else "unverified"})
            except EmbeddingFailure as exc:
                falsified += exc.hypotheses_hold
                records.append({"seed": seed, "l": l, "ends": [a, b], "outcome": "failure",
                                "falsification": exc.hypotheses_hold})
    passed = ok * 100 >= 99 * total and falsified == 0
    return passed, f"{ok}/{total} verified paths, {falsified} falsification events", records


def test_criterion_7_path_embedding(run_dir):
    passed, detail, records = criterion_7()
    finish(run_dir, 7, passed, detail, records)
    assert passed


# -- 8: end-to-end pipeline --------------------------------------------------


def pipeline_run(seed: int, N: int = 400) -> dict:
    g = random_coloring(N, N, 2, seed=seed)
    try:
        res = find_long_mono_cycle(g, 1, 1, XI, seed=seed)
        rep = dict(res.report)
        rep["verified"] = bool(rep.get("verified")) and bool(verify_cycle(g, res.certificate))
    except PipelineError as exc:
        rep = dict(exc.report or {})
        rep["verified"] = False
        rep["failed_stage"] = exc.stage
    rep["kind"] = "pipeline"
    return rep


def criterion_8(seeds: range = range(100)) -> tuple[bool, str, list[dict], list[float]]:
    records, seconds = [], []
    for seed in seeds:
        t0 = time.perf_counter()
        records.append(pipeline_run(seed))
        seconds.append(time.perf_counter() - t0)
    verified = sum(r["verified"] for r in records)
    lengths = {r["certificate"]["length"] for r in records if r["verified"]}
    med = statistics.median(seconds)
    passed = verified >= 95 * len(records) / 100 and med < 60 and lengths <= {332}
    return passed, f"{verified}/{len(records)} verified, lengths {sorted(lengths)}, median {med:.2f}s", records, seconds


def test_criterion_8_pipeline(run_dir):
    passed, detail, records, _ = criterion_8()
    finish(run_dir, 8, passed, detail, records)
    assert passed


# -- 9: connected-matching grids ---------------------------------------------


def adversarial_two_coloring(N: int, delta: int, seed: int) -> ColoredBipartiteGraph:
    """2-coloring of a ``delta``-regular bipartite host on ``N + N`` vertices.

    Edges are removed along a circulant band (every vertex loses exactly
    ``N - delta`` edges) under seeded row and column permutations.  The
    coloring cycles through three patterns by seed: uniform random, split by
    column halves, and split by diagonal blocks.
    """
    rng = np.random.default_rng([9, seed])
    rows, cols = rng.permutation(N), rng.permutation(N)
    pattern = seed % 3
    if pattern == 0:
        c = rng.integers(1, 3, size=(N, N)).astype(np.int16)
    elif pattern == 1:
        c = np.where(np.arange(N)[None, :] < N // 2, 1, 2).repeat(N, axis=0).astype(np.int16)
    else:
        half = np.arange(N) < N // 2
        c = np.where(half[:, None] == half[None, :], 1, 2).astype(np.int16)
    band = (cols[None, :] - rows[:, None]) % N < N - delta
    c[band] = 0
    return ColoredBipartiteGraph(c, 2, complete=False)


def three_coloring(N: int, seed: int) -> ColoredBipartiteGraph:
    """Random 3-coloring whose color weights are skewed toward the long color on odd seeds."""
    rng = np.random.default_rng([31, seed])
    w = [1 / 3, 1 / 3, 1 / 3] if seed % 2 == 0 else [0.1, 0.1, 0.8]
    c = rng.choice([1, 2, 3], size=(N, N), p=w).astype(np.int16)
    return ColoredBipartiteGraph(c, 3, complete=True)


def _grid_run(grid: str, kprime: int, seed: int, g: ColoredBipartiteGraph, alphas) -> dict:
    certs = best_connected_matchings(g)
    thresholds = [(2 * Fraction(a) + XI / 10) * kprime for a in alphas]
    sat = [c.saturated for c in certs]
    verified = all(bool(verify_connected_matching(g, c)) for c in certs)
    met = [s >= t for s, t in zip(sat, thresholds)]
    return {"grid": grid, "kprime": kprime, "seed": seed, "N": g.n1, "min_degree": min_degree(g), "saturated": sat,
            "thresholds": [str(t) for t in thresholds], "met": met, "verified": verified}


def criterion_9(seeds: int = 50, spot_seeds: int = 20) -> tuple[bool, str, list[dict]]:
    records = []
    for kprime in (20, 40, 80):
        N = math.ceil((2 + 8 * XI) * kprime)
        delta = math.ceil((Fraction(7, 8) + XI) * (2 + 8 * XI) * kprime)
        for seed in range(seeds):
            records.append(_grid_run("complete", kprime, seed, random_coloring(N, N, 2, seed=seed), (1, 1)))
            g = adversarial_two_coloring(N, delta, seed)
            assert min_degree(g) >= delta
            records.append(_grid_run("min-degree", kprime, seed, g, (1, 1)))
    alphas3 = (Fraction(1, 10), Fraction(1, 10), Fraction(1))
    for kprime in (20, 40):
        N = math.ceil((sum(alphas3) + 5 * 6 * XI) * kprime)
        for seed in range(spot_seeds):
            records.append(_grid_run("three-color", kprime, seed, three_coloring(N, seed), alphas3))
    misses = [r for r in records if not (any(r["met"]) and r["verified"])]
    parts = []
    for grid in ("complete", "min-degree", "three-color"):
        rs = [r for r in records if r["grid"] == grid]
        parts.append(f"grid {grid}: {sum(any(r['met']) and r['verified'] for r in rs)}/{len(rs)}")
    return not misses, ", ".join(parts), records


def test_criterion_9_connected_matching_grids(run_dir):
    passed, detail, records = criterion_9()
    finish(run_dir, 9, passed, detail, records)
    assert passed


# -- 10: determinism ---------------------------------------------------------


def test_criterion_10_determinism(run_dir):
    reruns = {
        "1": lambda: criterion_1()[2],
        "2": lambda: criterion_2(1)[2],
        "3": lambda: criterion_3()[2],
        "4": lambda: criterion_4(count=200)[2],
        "5": lambda: criterion_5(count=200)[2],
        "6": lambda: criterion_6(count=100)[2],
        "7": lambda: criterion_7(seeds=range(10))[2],
        "8": lambda: criterion_8(seeds=range(3))[2],
        "9": lambda: criterion_9(seeds=3, spot_seeds=2)[2],
    }
    differing = []
    for name, fn in reruns.items():
        first, second = dump(fn()), dump(fn())
        if first != second:
            differing.append(name)
    passed = not differing
    detail = f"{len(reruns)} criteria re-run twice, " + (f"differing: {differing}" if differing else "all byte-identical")
    finish(run_dir, 10, passed, detail, [{"criteria": sorted(reruns), "differing": differing}])
    assert passed
