"""Pytest fixtures for gbtk."""

from __future__ import annotations

from itertools import combinations, product
from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from gbtk.config import Limits  # noqa: E402
from gbtk.graph import Graph  # noqa: E402
from gbtk.io import load_graph  # noqa: E402
from gbtk.words import ThetaWord  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"


def complete_graph(n: int) -> Graph:
    vertices = [f"k{i}" for i in range(1, n + 1)]
    edges = [(f"e{a}{b}", f"k{a}", f"k{b}") for a, b in combinations(range(1, n + 1), 2)]
    return Graph.build(vertices, edges)


def cycle_graph(n: int) -> Graph:
    vertices = [f"v{i}" for i in range(n)]
    edges = [(f"s{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)]
    return Graph.build(vertices, edges)


def random_theta_word(rng: np.random.RandomState, n: int, max_length: int = 8) -> ThetaWord:
    letters = []
    for _ in range(rng.randint(0, max_length + 1)):
        i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        letters.append((int(i), int(j), 1 if rng.rand() < 0.5 else -1))
    return ThetaWord(n, tuple(letters))


@pytest.fixture()
def y_graph() -> Graph:
    return load_graph(FIXTURES / "Y.json")


@pytest.fixture()
def h_graph() -> Graph:
    return load_graph(FIXTURES / "H.json")


@pytest.fixture()
def theta_graph() -> Graph:
    return load_graph(FIXTURES / "theta.json")


@pytest.fixture()
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture()
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture()
def k5() -> Graph:
    return complete_graph(5)


@pytest.fixture()
def k33() -> Graph:
    left = ["x1", "x2", "x3"]
    right = ["y1", "y2", "y3"]
    edges = [(f"{a}{b}", a, b) for a, b in product(left, right)]
    return Graph.build(left + right, edges)


@pytest.fixture()
def path4() -> Graph:
    return Graph.build(
        ["p1", "p2", "p3", "p4"],
        [("s1", "p1", "p2"), ("s2", "p2", "p3"), ("s3", "p3", "p4")],
    )


@pytest.fixture()
def limits() -> Limits:
    return Limits()
