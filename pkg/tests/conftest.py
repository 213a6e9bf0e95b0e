import random
from itertools import combinations

import pytest

from pathcount import graph


def all_graphs(n):
    """Every labelled simple undirected graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield graph.Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def random_suite(count=150, seed=2024, lo=6, hi=8):
    rng = random.Random(seed)
    densities = (0.15, 0.3, 0.5, 0.7, 0.9)
    return [graph.random_graph(rng.randint(lo, hi), densities[i % len(densities)], rng) for i in range(count)]


def random_dag_suite(count=150, seed=77, lo=1, hi=8):
    rng = random.Random(seed)
    densities = (0.15, 0.3, 0.5, 0.7)
    return [graph.random_dag(rng.randint(lo, hi), densities[i % len(densities)], rng) for i in range(count)]


@pytest.fixture
def p3():
    return graph.path(3)


@pytest.fixture
def two_by_two():
    from pathcount.stable import parse_sm
    return parse_sm("2\n1 2\n2 1\n2 1\n1 2\n")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(results[name])
