"""Counting and sampling nonempty cliques over a nice path decomposition.

Every clique lies inside some bag, so each one is charged to its
last-inserted vertex: at the insertion of ``v`` we count the cliques of the
current bag that contain ``v``.  The empty clique is never counted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .decomposition import NicePathDecomposition
from .errors import DirectedGraph
from .graph import Graph
from .labeling import choose_weighted


@dataclass(frozen=True)
class CliqueCounts:
    per_vertex: tuple[int, ...]
    total: int


def _insertion_bags(g: Graph, npd: NicePathDecomposition):
    """Yield ``(v, other bag vertices)`` at each insertion event."""
    bag = set()
    for is_ins, v in npd.events:
        if is_ins:
            yield v, sorted(bag)
            bag.add(v)
        else:
            bag.discard(v)


def _cliques_with(g: Graph, v: int, others):
    """All cliques of ``others + {v}`` that contain ``v``, by brute force over subsets."""
    cand = [w for w in others if g.has_edge(v, w)]
    found = [(v,)]
    for r in range(1, len(cand) + 1):
        for sub in combinations(cand, r):
            if all(g.has_edge(a, b) for a, b in combinations(sub, 2)):
                found.append(tuple(sorted(sub + (v,))))
    return found


def _count_with(g: Graph, v: int, others) -> int:
    cand = [w for w in others if g.has_edge(v, w)]
    total = 1
    for r in range(1, len(cand) + 1):
        for sub in combinations(cand, r):
            if all(g.has_edge(a, b) for a, b in combinations(sub, 2)):
                total += 1
    return total


def _check(g, npd):
    if g.directed:
        raise DirectedGraph("clique counting needs an undirected graph")
    npd.check(g)


def count_cliques(g: Graph, npd: NicePathDecomposition) -> CliqueCounts:
    _check(g, npd)
    per_vertex = [0] * g.n
    for v, others in _insertion_bags(g, npd):
        per_vertex[v] = _count_with(g, v, others)
    return CliqueCounts(tuple(per_vertex), sum(per_vertex))


def sample_clique(g: Graph, npd: NicePathDecomposition, rng: random.Random, counts: CliqueCounts | None = None):
    """Uniform nonempty clique as a sorted vertex tuple.

    Pass ``counts`` from :func:`count_cliques` to skip recounting when
    drawing many samples.
    """
    if counts is None:
        counts = count_cliques(g, npd)
    else:
        _check(g, npd)
    if g.n < 1:
        raise ValueError("the empty graph has no nonempty clique")
    v = choose_weighted(rng, counts.per_vertex)
    for u, others in _insertion_bags(g, npd):
        if u == v:
            found = _cliques_with(g, v, others)
            return found[rng.randrange(len(found))]
    raise AssertionError("vertex never inserted")
