"""
tests/conftest.py
Shared fixtures and markers
"""

import os
from pathlib import Path

import pytest

from lcycles.core.graph import Graph
from lcycles.core.parsers import parse_adjlist

FIXTURES = Path(__file__).resolve().parent / "fixtures"

COUNTEREXAMPLE_TEXT = "A D E\nB D E\nC A B\nD A B\nE C"
COUNTEREXAMPLE_MASK = 275404


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance suite (deselect with -m 'not slow')")


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding graph and trace fixture files"""
    return FIXTURES


@pytest.fixture
def counterexample() -> Graph:
    """Five-node graph on which the unrevised relaxation misses AECBDA"""
    return parse_adjlist(COUNTEREXAMPLE_TEXT)


@pytest.fixture
def two_cycle() -> Graph:
    """Smallest cyclic graph: A -> B -> A"""
    return parse_adjlist("A B\nB A")


@pytest.fixture
def golden_trace() -> str:
    """Recorded 38-step listing of the unrevised run from A at k=5"""
    return (FIXTURES / "counterexample_original_k5.trace").read_text(encoding="utf-8")


@pytest.fixture
def isolated_env(monkeypatch, tmp_path):
    """Empty working directory, no LCYCLES_* or LOG_* variables; dotenv writes are undone"""
    saved = dict(os.environ)
    for name in list(os.environ):
        if name.startswith("LCYCLES_") or name in ("LOG_LEVEL", "LOG_FILE"):
            monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    yield tmp_path
    os.environ.clear()
    os.environ.update(saved)
