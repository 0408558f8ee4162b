from __future__ import annotations

import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from gdc.corpus import BUNDLED, check_path

# acceptance results, reported once at the end of the session
ACCEPTANCE: dict[int, tuple[str, bool, float, float]] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time a block, record pass/fail for the summary, and enforce the time limit."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        ACCEPTANCE[number] = (title, ok, elapsed, limit)
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, elapsed, limit = ACCEPTANCE[n]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {title}  ({elapsed:.2f}s, limit {limit:g}s)")


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return BUNDLED


@pytest.fixture(scope="session")
def reports():
    """Checked reports of every bundled corpus file, keyed by file name."""
    return {p.name: check_path(p) for p in sorted(BUNDLED.glob("*.gd"))}
