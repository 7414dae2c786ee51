"""Command-line front end.

Exit codes: 0 success, 1 verified negative (no such object), 2 error or
usage, 3 budget exhausted.  Machine output is one JSON object per line
with sorted keys.  Global flags can also be set through the environment
as ``BIPRAMSEY_SEED``, ``BIPRAMSEY_JOBS``, ``BIPRAMSEY_BUDGET_MS``,
``BIPRAMSEY_OUTPUT`` and ``BIPRAMSEY_FORMAT``; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .budget import Budget, BudgetExhausted
from .constructions import h_tilde, lower_bound_coloring
from .cycles import find_cycle_of_length, verify_cycle
from .embedding import PipelineError, find_long_mono_cycle
from .graph import ColoredBipartiteGraph, GraphError, random_coloring
from .matching import (
    Matching,
    TutteNotFound,
    best_connected_matchings,
    tutte_partition,
    verify_connected_matching,
    verify_tutte,
)
from .ramsey import EXHAUSTED, bramsey, decide_arrowing
from .regularity import EXACT_LIMIT, ClusterPartition, is_eps_regular
from .report import ReportError, to_text, write_report

ENV_PREFIX = "BIPRAMSEY_"

OK, NEGATIVE, ERROR, EXHAUSTED_EXIT = 0, 1, 2, 3


def _env(name: str, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"error: bad value {raw!r} for {ENV_PREFIX}{name}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    # on subcommands the defaults are suppressed so top-level values survive
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(_env("SEED", 0, int)), help="random seed (default 0)")
    p.add_argument("--jobs", type=int, default=d(_env("JOBS", 1, int)), help="worker processes (default 1)")
    p.add_argument("--budget-ms", type=int, default=d(_env("BUDGET_MS", None, int)), help="time budget per search")
    p.add_argument("-o", "--output", default=d(_env("OUTPUT", None)), help="write output to this file")
    p.add_argument("--format", choices=["json", "table"], default=d(_env("FORMAT", "json")))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="bipramsey", description="Bipartite Ramsey numbers of even cycles.")
    _global_flags(top, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)
    sub = top.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="emit an explicit coloring").add_subparsers(dest="which", required=True)
    p = con.add_parser("lower-bound", parents=[common], help="column construction for cycle half-lengths n_i")
    p.add_argument("--lengths", type=_int_list, required=True, help="half-lengths n_1,...,n_r")
    p = con.add_parser("h-tilde", parents=[common], help="the 2-colored 4n x 4n block graph")
    p.add_argument("--n", type=int, required=True)

    cyc = sub.add_parser("cycle", help="cycle search").add_subparsers(dest="which", required=True)
    p = cyc.add_parser("find", parents=[common], help="find a cycle of exact length in one color")
    p.add_argument("--color", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("graph")

    mat = sub.add_parser("matching", help="connected matchings").add_subparsers(dest="which", required=True)
    p = mat.add_parser("best", parents=[common], help="largest connected matching per color")
    p.add_argument("--graph", required=True)

    dec = sub.add_parser("decomp", help="matching obstructions").add_subparsers(dest="which", required=True)
    p = dec.add_parser("tutte", parents=[common], help="large matching or {S,T,U} decomposition")
    p.add_argument("--color", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("graph")

    reg = sub.add_parser("regularity", help="epsilon-regularity").add_subparsers(dest="which", required=True)
    p = reg.add_parser("check", parents=[common], help="check every cluster pair in every color")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--clusters", required=True, help="partition file")
    p.add_argument("--mode", choices=["auto", "exact", "witness"], default="auto")
    p.add_argument("graph")

    pip = sub.add_parser("pipeline", help="long monochromatic cycles").add_subparsers(dest="which", required=True)
    p = pip.add_parser("run", parents=[common], help="regularity-method pipeline on a 2-coloring")
    p.add_argument("--alpha", type=_float_list, default=[1.0, 1.0])
    p.add_argument("--xi", type=float, default=0.05)
    p.add_argument("--clusters", type=int, default=6)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--n", type=int, default=None, help="cycle parameter (default: largest allowed)")
    p.add_argument("--min-degree", action="store_true", help="accept incomplete hosts of high minimum degree")
    p.add_argument("--random", type=int, metavar="N", help="use a seeded random 2-coloring of K_{N,N}")
    p.add_argument("--runs", type=int, default=1, help="with --random: seeds seed..seed+runs-1")
    p.add_argument("--timing", action="store_true", help="include wall time (output is then not byte-stable)")
    p.add_argument("graph", nargs="?")

    ram = sub.add_parser("ramsey", help="exact small Ramsey numbers").add_subparsers(dest="which", required=True)
    p = ram.add_parser("decide", parents=[common], help="does every coloring of K_{N,N} contain a forbidden cycle")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--lengths", type=_int_list, required=True, help="cycle lengths 2n_1,...,2n_r")
    p.add_argument("--state", help="checkpoint file, written as the search progresses")
    p.add_argument("--resume", help="state file to resume from")
    p.add_argument("--checkpoint-nodes", type=int, default=1_000_000, help="nodes between checkpoints")
    p.add_argument("--timing", action="store_true")
    p = ram.add_parser("value", parents=[common], help="smallest N at which every coloring is hit")
    p.add_argument("--lengths", type=_int_list, required=True, help="cycle lengths 2n_1,...,2n_r")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("report", parents=[common], help="aggregate run JSON files into tables")
    p.add_argument("run_dir")
    return top


# -- output -----------------------------------------------------------------


def _table(rec: dict) -> str:
    width = max((len(k) for k in rec), default=0)
    lines = []
    for k in sorted(rec):
        v = rec[k]
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines) + "\n"


def _emit(args, records: list[dict]) -> None:
    if args.format == "table":
        text = "\n".join(_table(r) for r in records)
    else:
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> ColoredBipartiteGraph:
    return ColoredBipartiteGraph.load(path)


# -- commands -----------------------------------------------------------------


def _construct(args) -> int:
    g = lower_bound_coloring(args.lengths) if args.which == "lower-bound" else h_tilde(args.n)
    if args.output:
        g.save(args.output)
    else:
        sys.stdout.write(g.to_text())
    return OK


def _cycle(args) -> int:
    g = _load(args.graph)
    if not 1 <= args.color <= g.r:
        raise GraphError(f"color {args.color} outside 1..{g.r}")
    budget = Budget.from_ms(args.budget_ms)
    try:
        cert = find_cycle_of_length(g.view(args.color), args.length, budget)
    except BudgetExhausted as exc:
        _emit(args, [{"outcome": EXHAUSTED, "nodes": exc.nodes, "color": args.color, "length": args.length}])
        return EXHAUSTED_EXIT
    if cert is None:
        _emit(args, [{"outcome": "absent", "color": args.color, "length": args.length}])
        return NEGATIVE
    cert = type(cert)(args.color, cert.vertices)
    if not verify_cycle(g, cert):  # pragma: no cover - search output is verified
        raise GraphError("found cycle failed verification")
    _emit(args, [cert.to_dict()])
    return OK


def _matching(args) -> int:
    g = _load(args.graph)
    out = []
    for cert in best_connected_matchings(g):
        rec = cert.to_dict()
        rec["kind"] = "connected-matching"
        rec["verified"] = bool(verify_connected_matching(g, cert))
        out.append(rec)
    _emit(args, out)
    return OK


def _decomp(args) -> int:
    g = _load(args.graph)
    if not 1 <= args.color <= g.r:
        raise GraphError(f"color {args.color} outside 1..{g.r}")
    v = g.view(args.color)
    try:
        res = tutte_partition(v, args.alpha)
    except TutteNotFound as exc:
        _emit(args, [{"kind": "tutte", "outcome": "not-found", "alpha": args.alpha, "reason": str(exc)}])
        return NEGATIVE
    if isinstance(res, Matching):
        rec = {"kind": "tutte", "outcome": "matching", "alpha": args.alpha, **res.to_dict()}
    else:
        rec = {"kind": "tutte", "outcome": "decomposition", **res.to_dict(), "verified": bool(verify_tutte(v, res))}
    rec["color"] = args.color
    _emit(args, [rec])
    return OK


def _regularity(args) -> int:
    g = _load(args.graph)
    p = ClusterPartition.load(args.clusters)
    p.validate(g)
    out = []
    for i, A in enumerate(p.x_clusters):
        for j, B in enumerate(p.y_clusters):
            mode = args.mode
            if mode == "auto":
                mode = "exact" if max(len(A), len(B)) <= EXACT_LIMIT else "witness"
            for c in range(1, g.r + 1):
                res = is_eps_regular(g.view(c), A, B, args.eps, mode=mode, seed=args.seed)
                out.append({"kind": "regularity", "pair": [i, j], "color": c, "mode": mode, **res.to_dict()})
    _emit(args, out)
    return OK


def _pipeline_one(job: tuple) -> dict:
    g_or_n, seed, alpha, xi, k, eps, n, min_degree, timing = job
    g = random_coloring(g_or_n, g_or_n, 2, seed) if isinstance(g_or_n, int) else g_or_n
    try:
        res = find_long_mono_cycle(g, alpha[0], alpha[1], xi, k=k, eps=eps, n=n,
                                   min_degree_mode=min_degree, seed=seed, timing=timing)
        rep = res.report
    except PipelineError as exc:
        rep = dict(exc.report)
        rep["failed_stage"] = exc.stage
        rep["verified"] = False
    rep["kind"] = "pipeline"
    if isinstance(g_or_n, int):
        rep["host"] = {"random": g_or_n, "seed": seed}
    return rep


def _pipeline(args) -> int:
    if len(args.alpha) != 2:
        raise GraphError("--alpha takes exactly two values")
    if (args.random is None) == (args.graph is None):
        raise GraphError("give exactly one of a graph file or --random N")
    rest = (args.alpha, args.xi, args.clusters, args.eps, args.n, args.min_degree, args.timing)
    if args.random is not None:
        jobs = [(args.random, args.seed + s) + rest for s in range(args.runs)]
    else:
        jobs = [(_load(args.graph), args.seed) + rest]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_pipeline_one, jobs))
    else:
        reports = [_pipeline_one(j) for j in jobs]
    _emit(args, reports)
    return OK if all(r.get("verified") for r in reports) else ERROR


def _ramsey_decide(args) -> int:
    resume = None
    if args.resume:
        saved = json.loads(Path(args.resume).read_text())
        if saved.get("N") != args.N or saved.get("lengths") != args.lengths:
            raise GraphError(f"{args.resume} belongs to N={saved.get('N')}, lengths={saved.get('lengths')}")
        resume = saved.get("state")
    overall = Budget.from_ms(args.budget_ms)
    nodes = 0
    while True:
        # run in slices so that progress can be checkpointed between them
        slice_budget = Budget(max_nodes=args.checkpoint_nodes if args.state else None,
                              max_seconds=None if args.budget_ms is None else max(0.0, args.budget_ms / 1000 - overall.elapsed))
        v = decide_arrowing(args.N, args.lengths, slice_budget, resume)
        nodes += v.nodes
        if v.outcome != EXHAUSTED:
            break
        resume = v.state
        if args.state:
            state = {"N": args.N, "lengths": args.lengths, "state": resume, "nodes": nodes}
            Path(args.state).write_text(json.dumps(state, sort_keys=True) + "\n")
        out_of_time = args.budget_ms is not None and overall.elapsed * 1000 >= args.budget_ms
        if out_of_time or not args.state:
            break
    v.nodes = nodes
    rec = v.to_dict(args.timing)
    rec["kind"] = "ramsey-verdict"
    _emit(args, [rec])
    if v.outcome == EXHAUSTED:
        return EXHAUSTED_EXIT
    if args.state and Path(args.state).exists():
        Path(args.state).unlink()
    return OK


def _ramsey_value(args) -> int:
    factory = None if args.budget_ms is None else (lambda: Budget.from_ms(args.budget_ms))
    val = bramsey(args.lengths, args.nmax, factory)
    rec = val.to_dict(args.timing)
    rec["kind"] = "ramsey-value"
    _emit(args, [rec])
    if val.value is not None:
        return OK
    if val.verdicts and val.verdicts[-1].outcome == EXHAUSTED:
        return EXHAUSTED_EXIT
    return NEGATIVE


def _report(args) -> int:
    tables = write_report(args.run_dir, args.output and Path(args.output))
    if args.format == "table":
        sys.stdout.write(to_text(tables))
    else:
        for name, rows in tables.items():
            sys.stdout.write(json.dumps({"table": name, "rows": rows}, sort_keys=True) + "\n")
    return OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit 2, --help exits 0
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
        return exc.code if isinstance(exc.code, int) else ERROR
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return ERROR
    handlers = {
        "construct": _construct,
        "cycle": _cycle,
        "matching": _matching,
        "decomp": _decomp,
        "regularity": _regularity,
        "pipeline": _pipeline,
        "report": _report,
    }
    try:
        if args.command == "ramsey":
            return _ramsey_decide(args) if args.which == "decide" else _ramsey_value(args)
        return handlers[args.command](args)
    except (GraphError, ReportError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
