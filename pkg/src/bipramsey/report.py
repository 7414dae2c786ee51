"""Aggregate JSON run records into reproduction tables."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

TABLES = {
    "ramsey": ["lengths", "value", "interval", "nodes"],
    "verdicts": ["N", "lengths", "outcome", "nodes"],
    "pipeline": ["seed", "N", "color", "length", "verified", "failed_stage"],
    "constructions": ["construction", "params", "min_degree", "forbidden_length", "color", "absent"],
    "acceptance": ["criterion", "passed", "detail"],
}

_KIND_TABLE = {
    "ramsey-value": "ramsey",
    "ramsey-verdict": "verdicts",
    "pipeline": "pipeline",
    "construction-check": "constructions",
    "acceptance": "acceptance",
}


class ReportError(ValueError):
    pass


def _records(path: Path) -> list[dict]:
    text = path.read_text()
    out = []
    try:
        if path.suffix == ".jsonl":
            out = [json.loads(ln) for ln in text.splitlines() if ln.strip()]
        else:
            data = json.loads(text) if text.strip() else []
            out = data if isinstance(data, list) else [data]
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path.name}: malformed JSON ({exc})") from exc
    if not all(isinstance(r, dict) for r in out):
        raise ReportError(f"{path.name}: expected JSON objects")
    return out


def _row(kind: str, rec: dict) -> dict:
    if kind == "ramsey-value":
        return {"lengths": rec["lengths"], "value": rec["value"], "interval": rec["interval"],
                "nodes": sum(v.get("nodes", 0) for v in rec.get("verdicts", []))}
    if kind == "ramsey-verdict":
        return {k: rec.get(k) for k in TABLES["verdicts"]}
    if kind == "pipeline":
        cert = rec.get("certificate") or {}
        failed = [s for s, st in rec.get("stages", {}).items() if st.get("status") == "failed"]
        return {"seed": rec.get("params", {}).get("seed"), "N": rec.get("stages", {}).get("precondition", {}).get("N"),
                "color": rec.get("color"), "length": cert.get("length"), "verified": rec.get("verified", False),
                "failed_stage": failed[0] if failed else ""}
    return {k: rec.get(k) for k in TABLES[_KIND_TABLE[kind]]}


def collect(run_dir: str | Path) -> dict[str, list[dict]]:
    """Rows per table from every ``*.json`` / ``*.jsonl`` file in ``run_dir``.

    Records without a known ``kind`` are ignored.
    """
    run_dir = Path(run_dir)
    if not run_dir.is_dir():
        raise ReportError(f"{run_dir} is not a directory")
    tables: dict[str, list[dict]] = {name: [] for name in TABLES}
    for path in sorted(run_dir.iterdir()):
        if path.suffix not in (".json", ".jsonl"):
            continue
        for rec in _records(path):
            kind = rec.get("kind")
            if kind in _KIND_TABLE:
                tables[_KIND_TABLE[kind]].append(_row(kind, rec))
    return tables


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join("?" if x is None else str(x) for x in v)
    return "" if v is None else str(v)


def to_csv(name: str, rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLES[name])
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in TABLES[name]])
    return buf.getvalue()


def to_text(tables: dict[str, list[dict]]) -> str:
    parts = []
    for name, cols in TABLES.items():
        rows = [[_fmt(r.get(c)) for c in cols] for r in tables.get(name, [])]
        widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(cols)]
        parts.append(f"== {name} ({len(rows)} rows)")
        parts.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        parts += ["  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in rows]
        parts.append("")
    return "\n".join(parts)


def write_report(run_dir: str | Path, out_dir: str | Path | None = None) -> dict[str, list[dict]]:
    """Write one CSV per table plus ``report.txt``; returns the tables."""
    tables = collect(run_dir)
    out = Path(out_dir) if out_dir else Path(run_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, rows in tables.items():
        (out / f"{name}.csv").write_text(to_csv(name, rows))
    (out / "report.txt").write_text(to_text(tables))
    return tables
