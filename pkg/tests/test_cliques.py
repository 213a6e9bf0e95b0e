import random

import pytest

from pathcount import cliques, graph
from pathcount import decomposition as dec
from pathcount.errors import DirectedGraph
from pathcount.oracle import enumerate_cliques

from conftest import random_suite


def counts(g):
    return cliques.count_cliques(g, dec.decompose(g))


def test_examples():
    assert counts(graph.complete(3)).total == 7
    assert counts(graph.path(3)).total == 5
    assert counts(graph.edgeless(1)).total == 1


def test_per_vertex_sums_and_lower_bound():
    c = counts(graph.grid(3, 3))
    assert sum(c.per_vertex) == c.total
    assert all(x >= 1 for x in c.per_vertex)


@pytest.mark.parametrize("g", random_suite(40, seed=3), ids=lambda g: f"n{g.n}m{g.m}")
def test_matches_oracle(g):
    assert counts(g).total == len(enumerate_cliques(g))


def test_directed_rejected():
    g = graph.chain_dag(3)
    with pytest.raises(DirectedGraph):
        cliques.count_cliques(g, dec.decompose(g))


def test_single_vertex_sample():
    g = graph.edgeless(1)
    npd = dec.decompose(g)
    assert {cliques.sample_clique(g, npd, random.Random(s)) for s in range(20)} == {(0,)}


def test_samples_are_cliques_and_reproducible():
    g = graph.random_graph(8, 0.6, random.Random(1))
    npd = dec.decompose(g)
    valid = {tuple(sorted(c)) for c in enumerate_cliques(g)}
    drawn = [cliques.sample_clique(g, npd, random.Random(s)) for s in range(200)]
    assert set(drawn) <= valid
    assert drawn == [cliques.sample_clique(g, npd, random.Random(s)) for s in range(200)]
