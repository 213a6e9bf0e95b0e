import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathcount import decomposition as dec
from pathcount import graph
from pathcount.decomposition import Ins, PathDecomposition, Rem
from pathcount.errors import BudgetExceeded, FormatError, InvalidDecomposition
from pathcount.oracle import exact_pathwidth


def pd(*bags):
    return PathDecomposition(tuple(tuple(b) for b in bags))


def test_validate_ok():
    report = dec.validate(graph.path(3), pd((0, 1), (1, 2)))
    assert report.ok and report.width == 1


def test_validate_uncovered_edge():
    report = dec.validate(graph.path(3), pd((0, 1), (2,)))
    assert not report
    assert report.violation == "uncovered-edge" and report.witness == (1, 2)


def test_validate_interval_gap():
    report = dec.validate(graph.edgeless(3), pd((0,), (1,), (0, 2)))
    assert report.violation == "interval-gap" and report.witness == 0


def test_validate_missing_vertex():
    report = dec.validate(graph.edgeless(3), pd((0, 1)))
    assert report.violation == "missing-vertex" and report.witness == 2


def test_gap_does_not_hide_uncovered_edge():
    # 0 and 1 share spans [0,2] but never a bag
    g = graph.Graph(3, ((0, 1),))
    report = dec.validate(g, pd((0, 2), (1, 2), (0, 2)))
    assert report.violation == "uncovered-edge"


def test_to_nice_single_edge():
    npd = dec.to_nice(graph.path(2), pd((0,), (0, 1)))
    assert list(npd.events) in ([Ins(0), Ins(1), Rem(0), Rem(1)], [Ins(0), Ins(1), Rem(1), Rem(0)])
    assert npd.width == 1


def test_to_nice_path3():
    g = graph.path(3)
    npd = dec.to_nice(g, pd((0, 1), (1, 2)))
    assert len(npd.events) == 6 and npd.width == 1
    assert dec.validate(g, npd.as_path_decomposition())


def test_to_nice_single_vertex():
    assert list(dec.to_nice(graph.edgeless(1), pd((0,))).events) == [Ins(0), Rem(0)]


def test_to_nice_rejects_invalid():
    with pytest.raises(InvalidDecomposition):
        dec.to_nice(graph.path(3), pd((0, 1), (2,)))


def test_nice_check_rejects_bad_event_sequences():
    g = graph.path(2)
    with pytest.raises(InvalidDecomposition):
        dec.NicePathDecomposition.from_events([Ins(0), Rem(0), Ins(1), Rem(1)]).check(g)
    with pytest.raises(InvalidDecomposition):
        dec.NicePathDecomposition.from_events([Ins(0), Ins(1), Rem(0)]).check(g)


def test_intervals_read_off_events():
    spans = dec.intervals(dec.NicePathDecomposition.from_events([Ins(0), Ins(1), Rem(0), Rem(1)]))
    # vertex 1 is in the bags after events 2 and 3; event 4 removes it
    assert spans[0] == (1, 2)
    assert spans[1] == (2, 3)
    assert dec.intervals(dec.NicePathDecomposition.from_events([Ins(0), Rem(0)]))[0] == (1, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.floats(0, 1), st.integers(0, 10**6))
def test_nice_invariants(n, p, seed):
    g = graph.random_graph(n, p, random.Random(seed))
    npd = dec.decompose(g)
    events = npd.events
    assert len(events) == 2 * n
    assert sorted(v for ins, v in events if ins) == list(range(n))
    bags = npd.bags()
    assert bags[-1] == ()
    assert max(len(b) for b in bags) - 1 == npd.width
    spans = dec.intervals(npd)
    for t, bag in enumerate(bags, 1):
        for v in range(n):
            lo, hi = spans[v]
            assert (v in bag) == (lo <= t <= hi)
    for u, v in g.edges:
        (a, b), (c, d) = spans[u], spans[v]
        assert max(a, c) <= min(b, d)


def test_find_decomposition_examples():
    found = dec.find_decomposition(graph.path(5), 1)
    assert found is not None and found.width == 1
    assert dec.find_decomposition(graph.complete(4), 2) is None
    found = dec.find_decomposition(graph.cycle(5), 2)
    assert found is not None and found.width == 2
    assert dec.validate(graph.cycle(5), found)


def test_find_decomposition_budget():
    g = graph.grid(6, 6)
    with pytest.raises(BudgetExceeded):
        dec.find_decomposition(g, 4, max_nodes=50)


def test_greedy_examples():
    assert dec.greedy_decomposition(graph.path(100)).width <= 2
    assert dec.greedy_decomposition(graph.complete(5)).width == 4
    assert dec.greedy_decomposition(graph.edgeless(4)).width == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.floats(0, 1), st.integers(0, 10**6))
def test_greedy_is_valid_and_not_below_optimum(n, p, seed):
    g = graph.random_graph(n, p, random.Random(seed))
    greedy = dec.greedy_decomposition(g)
    assert dec.validate(g, greedy)
    best = dec.optimal_decomposition(g)
    assert dec.validate(g, best)
    assert best.width == exact_pathwidth(g) <= greedy.width


def test_vertex_separation_matches_layout_width():
    g = graph.grid(3, 3)
    layout = dec.greedy_layout(g)
    assert dec.layout_to_decomposition(g, layout).width == dec.vertex_separation(g, layout)


def test_decompose_directed_uses_underlying_graph():
    g = graph.chain_dag(4)
    npd = dec.decompose(g, "exact")
    assert npd.width == 1
    npd.check(g)


def test_empty_graph():
    g = graph.Graph(0, ())
    assert dec.decompose(g).events == ()
    assert dec.decompose(g).width == -1


def test_pd_round_trip():
    p = pd((0, 1), (1, 2))
    text = dec.serialize_pd(p, 3)
    assert text == "s pd 2 2 3\nb 1 1 2\nb 2 2 3\n"
    assert dec.parse_pd(text) == p


@pytest.mark.parametrize("text,kind", [
    ("b 1 1", "header"),
    ("s pd 1 2 3\nb 1 1 4", "range"),
    ("s pd 2 2 3\nb 1 1 2", "count"),
    ("s pd 1 3 3\nb 1 1 2", "header"),
    ("s pd 1 2 3\nx 1 1 2", "bag"),
    ("s pd 1 2 3\nb 1 1 2\nb 1 2 3", "bag"),
])
def test_pd_parse_errors(text, kind):
    with pytest.raises(FormatError) as info:
        dec.parse_pd(text)
    assert info.value.kind == kind
