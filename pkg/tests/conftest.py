from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion id -> list of (passed, detail); parametrized parts share the id before "-"
_RESULTS: dict[str, list[tuple[bool, str]]] = {}


def record_criterion(criterion: int | str, passed: bool, detail: str) -> None:
    key = str(criterion).split("-")[0]
    _RESULTS.setdefault(key, []).append((passed, detail))
    print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} ({detail})")


@pytest.fixture(scope="session")
def run_dir(tmp_path_factory) -> Path:
    env = os.environ.get("BIPRAMSEY_ACCEPTANCE_DIR")
    if env:
        path = Path(env)
        path.mkdir(parents=True, exist_ok=True)
        return path
    return tmp_path_factory.mktemp("acceptance")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=int):
        parts = _RESULTS[key]
        ok = all(p for p, _ in parts)
        detail = " | ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
