import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathcount import decomposition as dec
from pathcount import graph, labeling, problems
from pathcount.errors import InvalidDecomposition, NoValidLabeling, NotADAG, ProblemGraphMismatch
from pathcount.oracle import enumerate_valid_labelings

INDEP = problems.independent_set()


def count(g, prob, method="greedy"):
    return labeling.count_valid_labelings(g, dec.decompose(g, method), prob)


def test_count_examples():
    assert count(graph.path(3), INDEP) == 5
    assert count(graph.complete(3), problems.coloring(3)) == 6
    assert count(graph.edgeless(1), problems.coloring(3)) == 3
    assert count(graph.chain_dag(3), problems.downset()) == 4
    assert count(graph.antichain_dag(5), problems.downset()) == 32


def test_count_trivial_predicates():
    g = graph.grid(2, 3)
    assert count(g, problems.custom(2, [[1, 1], [1, 1]])) == 2 ** 6
    assert count(g, problems.custom(1, [[0]])) == 0
    assert count(graph.edgeless(4), problems.custom(1, [[0]])) == 1


def test_count_empty_graph_is_one():
    g = graph.Graph(0, ())
    assert labeling.count_valid_labelings(g, dec.decompose(g), INDEP) == 1


def test_count_independent_of_decomposition():
    g = graph.grid(3, 4)
    prob = problems.coloring(3)
    widths = set()
    counts = set()
    for method in ("greedy", "exact"):
        npd = dec.decompose(g, method)
        widths.add(npd.width)
        counts.add(labeling.count_valid_labelings(g, npd, prob))
    trivial = dec.to_nice(g, dec.PathDecomposition((tuple(range(g.n)),)))
    counts.add(labeling.count_valid_labelings(g, trivial, prob))
    assert len(counts) == 1


def test_custom_directed_predicate_matches_oracle():
    # labels 0..2, an arc forbids the head exceeding the tail
    prob = problems.custom(3, [[1, 0, 0], [1, 1, 0], [1, 1, 1]], directed=True)
    g = graph.random_digraph(6, 0.3, random.Random(5))
    assert count(g, prob) == len(enumerate_valid_labelings(g, prob))


def test_downset_rejects_cycles():
    g = graph.Graph(3, ((0, 1), (1, 2), (2, 0)), directed=True)
    with pytest.raises(NotADAG):
        labeling.count_valid_labelings(g, dec.decompose(g), problems.downset())


def test_direction_mismatch():
    with pytest.raises(ProblemGraphMismatch):
        count(graph.path(3), problems.downset())
    with pytest.raises(ProblemGraphMismatch):
        count(graph.chain_dag(3), INDEP)


def test_invalid_decomposition_rejected():
    g = graph.path(3)
    npd = dec.to_nice(graph.edgeless(3), dec.PathDecomposition(((0,), (1,), (2,))))
    with pytest.raises(InvalidDecomposition):
        labeling.count_valid_labelings(g, npd, INDEP)


def test_count_extensions_examples():
    g = graph.path(3)
    npd = dec.decompose(g)
    assert labeling.count_extensions(g, npd, INDEP, [None, 1, None]) == 1
    assert labeling.count_extensions(g, npd, INDEP, [None] * 3) == 5
    edge = graph.path(2)
    assert labeling.count_extensions(edge, dec.decompose(edge), INDEP, [1, 1]) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 10**6), st.data())
def test_count_extensions_matches_filtered_oracle(n, p, seed, data):
    g = graph.random_graph(n, p, random.Random(seed))
    prob = problems.coloring(3)
    partial = data.draw(st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=n, max_size=n))
    want = sum(all(x is None or x == y for x, y in zip(partial, lab))
               for lab in enumerate_valid_labelings(g, prob))
    assert labeling.count_extensions(g, dec.decompose(g), prob, partial) == want


def test_trace_layers_follow_events():
    g = graph.path(3)
    npd = dec.decompose(g)
    trace = labeling.forward_trace(g, npd, INDEP)
    # table t belongs to the bag after event t
    assert len(trace.tables) == len(npd.events)
    assert list(trace.bags) == npd.bags()
    assert trace.tables[-1] == [5] and trace.total == 5
    for bag, table in zip(trace.bags, trace.tables):
        assert len(table) == 2 ** len(bag)


def test_choose_weighted():
    rng = random.Random(0)
    assert labeling.choose_weighted(rng, [0, 5, 0]) == 1
    with pytest.raises(NoValidLabeling):
        labeling.choose_weighted(rng, [0, 0])


@pytest.mark.parametrize("method", ["reference", "fast"])
def test_sampling_no_valid_labeling(method):
    g = graph.path(2)
    with pytest.raises(NoValidLabeling):
        labeling.sample_labelings(g, dec.decompose(g), problems.coloring(1), random.Random(1), 1, method)


@pytest.mark.parametrize("fn", [labeling.sample_labeling, labeling.sample_labeling_fast])
def test_sampling_deterministic_and_valid(fn):
    g = graph.grid(3, 3)
    npd = dec.decompose(g)
    prob = problems.coloring(3)
    a = fn(g, npd, prob, random.Random(42))
    b = fn(g, npd, prob, random.Random(42))
    assert a == b
    assert problems.check_labeling(g, prob, a)


class TapeRng:
    """Deterministic stand-in for random.Random that replays a fixed ``randrange`` tape."""

    def __init__(self, tape):
        self.tape = list(tape)
        self.limits = []

    def randrange(self, stop):
        self.limits.append(stop)
        if not self.tape:
            raise LookupError
        value = self.tape.pop(0)
        if value >= stop:
            raise ValueError
        return value


def exact_distribution(fn, g, npd, prob):
    """Probability of each output, by walking every branch of the sampler's random tape."""
    dist = {}
    stack = [((), Fraction(1))]
    while stack:
        prefix, weight = stack.pop()
        rng = TapeRng(prefix)
        try:
            out = tuple(fn(g, npd, prob, rng))
        except LookupError:
            stop = rng.limits[-1]
            stack.extend((prefix + (i,), weight / stop) for i in range(stop))
            continue
        dist[out] = dist.get(out, 0) + weight
    return dist


@pytest.mark.parametrize("fn", [labeling.sample_labeling, labeling.sample_labeling_fast])
def test_exact_uniformity_on_path3(fn):
    g = graph.path(3)
    dist = exact_distribution(fn, g, dec.decompose(g), INDEP)
    assert dist == {lab: Fraction(1, 5) for lab in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)]}


@pytest.mark.parametrize("fn", [labeling.sample_labeling, labeling.sample_labeling_fast])
def test_exact_uniformity_single_vertex(fn):
    g = graph.edgeless(1)
    dist = exact_distribution(fn, g, dec.decompose(g), problems.coloring(2))
    assert dist == {(0,): Fraction(1, 2), (1,): Fraction(1, 2)}


@pytest.mark.parametrize("fn", [labeling.sample_labeling, labeling.sample_labeling_fast])
def test_exact_uniformity_downsets(fn):
    g = graph.Graph(4, ((0, 1), (0, 2), (2, 3)), directed=True)
    prob = problems.downset()
    dist = exact_distribution(fn, g, dec.decompose(g), prob)
    want = enumerate_valid_labelings(g, prob)
    assert dist == {tuple(lab): Fraction(1, len(want)) for lab in want}


def test_fast_sampler_on_cycle4():
    g = graph.cycle(4)
    prob = problems.coloring(3)
    npd = dec.decompose(g)
    draws = labeling.sample_labelings(g, npd, prob, random.Random(7), 100_000, "fast")
    freq = {}
    for lab in draws:
        freq[tuple(lab)] = freq.get(tuple(lab), 0) + 1
    assert len(freq) == 18
    assert max(abs(f / 100_000 - 1 / 18) for f in freq.values()) < 0.01
