from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from steineraudit.graph import Graph, parse_graph6  # noqa: E402

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@lru_cache(maxsize=None)
def connected_lines(n: int) -> tuple[str, ...]:
    return tuple((FIXTURES / f"connected{n}.g6").read_text().split())


@lru_cache(maxsize=None)
def connected(n: int) -> tuple[Graph, ...]:
    return tuple(parse_graph6(s) for s in connected_lines(n))


@lru_cache(maxsize=None)
def trees(n: int) -> tuple[Graph, ...]:
    return tuple(parse_graph6(s) for s in (FIXTURES / f"trees{n}.g6").read_text().split())


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
