"""Simple graphs on vertices ``0..n-1``, the ``.gr`` format, and generators.

Files use 1-indexed vertices (PACE convention); everything in memory is
0-indexed.  Undirected edges are stored with ``tail < head``.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CycleFound, FormatError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False
    # derived
    out_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    neighbor_sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)
    out_sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not self.directed and u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            canon.append((u, v))
        canon.sort()
        out_adj = [[] for _ in range(self.n)]
        in_adj = [[] for _ in range(self.n)]
        for u, v in canon:
            out_adj[u].append(v)
            in_adj[v].append(u)
        if self.directed:
            adj = [sorted(set(o) | set(i)) for o, i in zip(out_adj, in_adj)]
        else:
            adj = [sorted(o + i) for o, i in zip(out_adj, in_adj)]
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "out_adj", tuple(tuple(x) for x in out_adj))
        object.__setattr__(self, "in_adj", tuple(tuple(x) for x in in_adj))
        object.__setattr__(self, "adjacency", tuple(tuple(x) for x in adj))
        object.__setattr__(self, "neighbor_sets", tuple(frozenset(x) for x in adj))
        object.__setattr__(self, "out_sets", tuple(frozenset(x) for x in out_adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        """True if ``u`` and ``v`` are adjacent, ignoring orientation."""
        return v in self.neighbor_sets[u]

    def undirected(self) -> Graph:
        """The underlying undirected graph (antiparallel arcs merge)."""
        if not self.directed:
            return self
        pairs = {(min(u, v), max(u, v)) for u, v in self.edges}
        return Graph(self.n, tuple(sorted(pairs)), directed=False)


def parse_graph(text: str) -> Graph:
    """Parse a ``.gr`` document (``p graph <n> <m> <u|d>`` then ``m`` edge lines)."""
    header = None
    n = m = 0
    directed = False
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 5 or parts[0] != "p" or parts[1] != "graph" or parts[4] not in ("u", "d"):
                raise FormatError("header", f"malformed header {line!r}; expected 'p graph <n> <m> <u|d>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("header", f"non-integer size in header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise FormatError("header", f"negative size in header {line!r}", lineno)
            directed = parts[4] == "d"
            header = lineno
            continue
        if len(parts) != 2:
            raise FormatError("edge", f"malformed edge line {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("edge", f"non-integer endpoint in {line!r}", lineno) from None
        if not (1 <= a <= n and 1 <= b <= n):
            raise FormatError("range", f"endpoint out of range 1..{n} in {line!r}", lineno)
        if a == b:
            raise FormatError("self-loop", f"self-loop at vertex {a}", lineno)
        key = (a - 1, b - 1) if directed else (min(a, b) - 1, max(a, b) - 1)
        if key in seen:
            raise FormatError("duplicate", f"duplicate edge {a} {b} (first seen on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append((a - 1, b - 1))
    if header is None:
        raise FormatError("header", "missing 'p graph' header")
    if len(edges) != m:
        raise FormatError("count", f"header declares {m} edges but {len(edges)} were given")
    return Graph(n, tuple(edges), directed)


def serialize_graph(g: Graph) -> str:
    lines = [f"p graph {g.n} {g.m} {'d' if g.directed else 'u'}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def check_dag(g: Graph) -> list[int]:
    """Return a topological order of ``g`` or raise :class:`CycleFound`.

    Ties are broken by smallest vertex id, so the order is deterministic.
    """
    if not g.directed:
        raise ValueError("check_dag needs a directed graph")
    indeg = [len(x) for x in g.in_adj]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in g.out_adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) == g.n:
        return order
    raise CycleFound(_find_cycle(g, {v for v in range(g.n) if indeg[v] > 0}))


def _find_cycle(g, remaining):
    # Every vertex left after Kahn's pass has an in-neighbour that is also
    # left, so walking backwards must revisit a vertex.
    start = min(remaining)
    pos = {}
    walk = []
    v = start
    while v not in pos:
        pos[v] = len(walk)
        walk.append(v)
        v = min(u for u in g.in_adj[v] if u in remaining)
    cycle = walk[pos[v]:][::-1]
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


# -- generators ------------------------------------------------------------

FAMILIES = ("path", "cycle", "complete", "grid", "chain_dag", "antichain_dag", "edgeless")


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    _need(n >= 1, "complete needs n >= 1")
    return Graph(n, tuple(combinations(range(n), 2)))


def edgeless(n: int) -> Graph:
    _need(n >= 1, "edgeless needs n >= 1")
    return Graph(n, ())


def grid(rows: int, cols: int) -> Graph:
    _need(rows >= 1 and cols >= 1, "grid needs rows, cols >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, tuple(edges))


def chain_dag(n: int) -> Graph:
    _need(n >= 1, "chain_dag needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), directed=True)


def antichain_dag(n: int) -> Graph:
    _need(n >= 1, "antichain_dag needs n >= 1")
    return Graph(n, (), directed=True)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def generate(family: str, *sizes: int) -> Graph:
    makers = {
        "path": path, "cycle": cycle, "complete": complete, "grid": grid,
        "chain_dag": chain_dag, "antichain_dag": antichain_dag, "edgeless": edgeless,
    }
    if family not in makers:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    expected = 2 if family == "grid" else 1
    if len(sizes) != expected:
        raise ValueError(f"{family} takes {expected} size parameter(s), got {len(sizes)}")
    return makers[family](*sizes)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


def random_dag(n: int, p: float, rng: random.Random) -> Graph:
    """Random DAG: G(n, p) oriented along a random vertex permutation."""
    perm = list(range(n))
    rng.shuffle(perm)
    rank = {v: i for i, v in enumerate(perm)}
    edges = []
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.append((u, v) if rank[u] < rank[v] else (v, u))
    return Graph(n, tuple(edges), directed=True)


def random_digraph(n: int, p: float, rng: random.Random) -> Graph:
    """Random simple digraph; each ordered pair is an arc with probability ``p``."""
    return Graph(n, tuple((u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p),
                 directed=True)
