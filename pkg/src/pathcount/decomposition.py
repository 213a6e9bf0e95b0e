"""Path decompositions: validation, nice refinement, exact and greedy search.

Exact search uses the vertex-separation formulation of pathwidth.  For a
vertex layout ``v_1 .. v_n`` with prefixes ``S_i``, the boundary of ``S_i``
is the set of placed vertices that still have an unplaced neighbour.  The
largest boundary over all prefixes equals the width of the decomposition
whose ``i``-th bag is ``boundary(S_{i-1}) + {v_i}``, and the minimum over
layouts is the pathwidth.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

from .errors import BudgetExceeded, FormatError, InvalidDecomposition
from .graph import Graph


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(tuple(sorted(set(b))) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


class Event(NamedTuple):
    insert: bool
    vertex: int

    def __str__(self):
        return f"{'Ins' if self.insert else 'Rem'} {self.vertex}"


def Ins(v):
    return Event(True, v)


def Rem(v):
    return Event(False, v)


@dataclass(frozen=True)
class NicePathDecomposition:
    """Sequence of ``2n`` single-vertex insert/remove events."""

    events: tuple[Event, ...]
    width: int

    @classmethod
    def from_events(cls, events):
        events = tuple(Event(bool(e[0]), int(e[1])) for e in events)
        size = best = 0
        for e in events:
            size += 1 if e.insert else -1
            best = max(best, size)
        return cls(events, best - 1)

    def bags(self):
        """Bag after each event (``len(events)`` bags, the last one empty)."""
        bag = set()
        out = []
        for e in self.events:
            if e.insert:
                bag.add(e.vertex)
            else:
                bag.discard(e.vertex)
            out.append(tuple(sorted(bag)))
        return out

    def as_path_decomposition(self) -> PathDecomposition:
        return PathDecomposition(tuple(self.bags()))

    def check(self, g: Graph) -> None:
        """Raise :class:`InvalidDecomposition` unless this is a nice decomposition of ``g``."""
        if len(self.events) != 2 * g.n:
            raise InvalidDecomposition(f"expected {2 * g.n} events, got {len(self.events)}")
        ins = [-1] * g.n
        rem = [-1] * g.n
        for t, (is_ins, v) in enumerate(self.events):
            if not 0 <= v < g.n:
                raise InvalidDecomposition(f"event {t + 1} names vertex {v} outside [0, {g.n})")
            slot = ins if is_ins else rem
            if slot[v] != -1:
                raise InvalidDecomposition(f"vertex {v} {'inserted' if is_ins else 'removed'} twice")
            slot[v] = t
            if not is_ins and ins[v] == -1:
                raise InvalidDecomposition(f"vertex {v} removed before insertion")
        for u, v in g.edges:
            if max(ins[u], ins[v]) >= min(rem[u], rem[v]):
                raise InvalidDecomposition(f"edge ({u}, {v}) is not covered by any bag")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    width: int | None = None
    violation: str | None = None   # "missing-vertex" | "uncovered-edge" | "interval-gap"
    witness: object = None

    def __bool__(self):
        return self.ok


def validate(g: Graph, pd: PathDecomposition) -> ValidationReport:
    """Check the three path-decomposition conditions, reporting the first failure."""
    for b in pd.bags:
        for v in b:
            if not 0 <= v < g.n:
                raise ValueError(f"bag entry {v} outside [0, {g.n})")
    first = [-1] * g.n
    last = [-1] * g.n
    hits = [0] * g.n
    for i, b in enumerate(pd.bags):
        for v in b:
            if first[v] == -1:
                first[v] = i
            last[v] = i
            hits[v] += 1
    for v in range(g.n):
        if first[v] == -1:
            return ValidationReport(False, violation="missing-vertex", witness=v)
    bag_sets = None
    for u, v in g.edges:
        lo, hi = max(first[u], first[v]), min(last[u], last[v])
        if lo > hi:
            return ValidationReport(False, violation="uncovered-edge", witness=(u, v))
        if hits[u] != last[u] - first[u] + 1 or hits[v] != last[v] - first[v] + 1:
            # an interval has a gap, so overlap of the spans proves nothing
            if bag_sets is None:
                bag_sets = [set(b) for b in pd.bags]
            if not any(u in bag_sets[i] and v in bag_sets[i] for i in range(lo, hi + 1)):
                return ValidationReport(False, violation="uncovered-edge", witness=(u, v))
    for v in range(g.n):
        if hits[v] != last[v] - first[v] + 1:
            return ValidationReport(False, violation="interval-gap", witness=v)
    return ValidationReport(True, width=pd.width)


def to_nice(g: Graph, pd: PathDecomposition) -> NicePathDecomposition:
    report = validate(g, pd)
    if not report:
        raise InvalidDecomposition(f"{report.violation}: {report.witness}")
    events = []
    prev: tuple[int, ...] = ()
    for bag in pd.bags + ((),):
        cur = set(bag)
        before = set(prev)
        events += [Event(False, v) for v in prev if v not in cur]
        events += [Event(True, v) for v in bag if v not in before]
        prev = bag
    return NicePathDecomposition(tuple(events), pd.width if g.n else -1)


@dataclass(frozen=True)
class VertexIntervals:
    """Closed 1-based event-index intervals: ``v`` is in the bag after event ``t`` iff ``t`` in ``[start, end]``."""

    spans: tuple[tuple[int, int], ...]

    def __getitem__(self, v):
        return self.spans[v]


def intervals(npd: NicePathDecomposition) -> VertexIntervals:
    n = len(npd.events) // 2
    start = [0] * n
    end = [0] * n
    for t, (is_ins, v) in enumerate(npd.events, 1):
        if is_ins:
            start[v] = t
        else:
            end[v] = t - 1
    return VertexIntervals(tuple(zip(start, end)))


# -- layouts -----------------------------------------------------------------

def layout_to_decomposition(g: Graph, layout) -> PathDecomposition:
    """Bag ``i`` is ``boundary(prefix before v_i) + {v_i}``."""
    nbrs = g.neighbor_sets
    placed = set()
    boundary = set()
    bags = []
    for v in layout:
        bags.append(tuple(sorted(boundary | {v})))
        placed.add(v)
        boundary.add(v)
        boundary = {u for u in boundary if not nbrs[u] <= placed}
    return PathDecomposition(tuple(bags))


def vertex_separation(g: Graph, layout) -> int:
    nbrs = g.neighbor_sets
    placed = set()
    best = 0
    for v in layout:
        placed.add(v)
        best = max(best, sum(1 for u in placed if not nbrs[u] <= placed))
    return best


def greedy_layout(g: Graph) -> list[int]:
    """Place, at each step, the vertex giving the smallest boundary.

    Ties go to the vertex with fewest unplaced neighbours, then the smallest
    id.  Only neighbours of the boundary plus the best untouched vertex need
    to be scored, since any other vertex leaves the boundary no smaller.
    """
    nbrs = g.adjacency
    unplaced_deg = [len(nbrs[v]) for v in range(g.n)]
    placed = [False] * g.n
    boundary = set()
    by_degree = sorted(range(g.n), key=lambda v: (unplaced_deg[v], v))
    cursor = 0
    layout = []
    for _ in range(g.n):
        candidates = {w for u in boundary for w in nbrs[u] if not placed[w]}
        while placed[by_degree[cursor]]:
            cursor += 1
        candidates.add(by_degree[cursor])
        best_key = None
        for v in candidates:
            freed = sum(1 for u in nbrs[v] if u in boundary and unplaced_deg[u] == 1)
            size = len(boundary) - freed + (1 if unplaced_deg[v] > 0 else 0)
            key = (size, unplaced_deg[v], v)
            if best_key is None or key < best_key:
                best_key = key
        v = best_key[2]
        layout.append(v)
        placed[v] = True
        for w in nbrs[v]:
            unplaced_deg[w] -= 1
            if w in boundary and unplaced_deg[w] == 0:
                boundary.discard(w)
        if unplaced_deg[v] > 0:
            boundary.add(v)
    return layout


def greedy_decomposition(g: Graph) -> PathDecomposition:
    if g.n < 1:
        raise ValueError("greedy_decomposition needs n >= 1")
    return layout_to_decomposition(g, greedy_layout(g))


class _Search:
    """Depth-first decision search over vertex subsets with boundary <= k."""

    def __init__(self, g, k, max_nodes, deadline):
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.nbr = [sum(1 << w for w in g.neighbor_sets[v]) for v in range(g.n)]
        self.k = k
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.seen = set()
        self.nodes = 0

    def boundary_size(self, s):
        outside = self.full & ~s
        count = 0
        rest = s
        while rest:
            low = rest & -rest
            if self.nbr[low.bit_length() - 1] & outside:
                count += 1
            rest ^= low
        return count

    def run(self):
        layout = []
        if self._dfs(0, layout):
            return layout
        return None

    def _dfs(self, s, layout):
        if s == self.full:
            return True
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget of {self.max_nodes} exhausted at width {self.k}")
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget exhausted at width {self.k}")
        # safe reduction: a vertex with no unplaced neighbours never hurts
        for v in range(self.n):
            bit = 1 << v
            if not s & bit and not self.nbr[v] & ~s & ~bit & self.full:
                layout.append(v)
                if self._dfs(s | bit, layout):
                    return True
                layout.pop()
                return False
        options = []
        for v in range(self.n):
            bit = 1 << v
            if s & bit:
                continue
            t = s | bit
            if t in self.seen:
                continue
            size = self.boundary_size(t)
            if size <= self.k:
                options.append((size, v, t))
        options.sort()
        for _, v, t in options:
            if t in self.seen:
                continue
            self.seen.add(t)
            layout.append(v)
            if self._dfs(t, layout):
                return True
            layout.pop()
        return False


def find_layout(g: Graph, max_width: int, max_nodes=None, budget_ms=None):
    """Layout of vertex separation <= ``max_width``, or None if none exists."""
    if max_width < 0:
        raise ValueError("max_width must be >= 0")
    g = g.undirected()
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    return _Search(g, max_width, max_nodes, deadline).run()


def find_decomposition(g: Graph, max_width: int, max_nodes=None, budget_ms=None) -> PathDecomposition | None:
    """Exact decision: a decomposition of width <= ``max_width`` iff one exists.

    Raises :class:`BudgetExceeded` when the node or time budget runs out,
    which is distinct from a definitive ``None``.
    """
    layout = find_layout(g, max_width, max_nodes, budget_ms)
    if layout is None:
        return None
    return layout_to_decomposition(g, layout)


def optimal_decomposition(g: Graph, max_nodes=None, budget_ms=None) -> PathDecomposition:
    """Minimum-width decomposition by increasing ``max_width`` from 0."""
    if g.n == 0:
        return PathDecomposition(())
    upper = greedy_decomposition(g)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    for k in range(upper.width):
        left = None if deadline is None else max(0.0, (deadline - time.monotonic()) * 1000.0)
        pd = find_decomposition(g, k, max_nodes, left)
        if pd is not None:
            return pd
    return upper


def decompose(g: Graph, method: str = "greedy", max_nodes=None, budget_ms=None) -> NicePathDecomposition:
    """Nice decomposition via ``exact`` or ``greedy`` search."""
    if g.n == 0:
        return NicePathDecomposition((), -1)
    if method == "exact":
        pd = optimal_decomposition(g, max_nodes, budget_ms)
    elif method == "greedy":
        pd = greedy_decomposition(g)
    else:
        raise ValueError(f"unknown decomposition method {method!r}")
    return to_nice(g, pd)


# -- .pd files ---------------------------------------------------------------

def parse_pd(text: str) -> PathDecomposition:
    header = None
    bags = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 5 or parts[:2] != ["s", "pd"]:
                raise FormatError("header", f"malformed header {line!r}; expected 's pd <r> <width+1> <n>'", lineno)
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise FormatError("header", f"non-integer field in {line!r}", lineno) from None
            continue
        if parts[0] != "b" or len(parts) < 2:
            raise FormatError("bag", f"malformed bag line {line!r}", lineno)
        try:
            idx, *verts = (int(x) for x in parts[1:])
        except ValueError:
            raise FormatError("bag", f"non-integer entry in {line!r}", lineno) from None
        if not 1 <= idx <= header[0]:
            raise FormatError("bag", f"bag index {idx} outside 1..{header[0]}", lineno)
        if idx in bags:
            raise FormatError("bag", f"bag {idx} given twice", lineno)
        if any(not 1 <= v <= header[2] for v in verts):
            raise FormatError("range", f"vertex outside 1..{header[2]} in {line!r}", lineno)
        bags[idx] = tuple(v - 1 for v in verts)
    if header is None:
        raise FormatError("header", "missing 's pd' header")
    r, size, _ = header
    if len(bags) != r:
        raise FormatError("count", f"header declares {r} bags but {len(bags)} were given")
    pd = PathDecomposition(tuple(bags[i] for i in range(1, r + 1)))
    if pd.width + 1 != size and r > 0:
        raise FormatError("header", f"header declares max bag size {size} but largest bag has {pd.width + 1}")
    return pd


def serialize_pd(pd: PathDecomposition, n: int) -> str:
    lines = [f"s pd {len(pd.bags)} {pd.width + 1} {n}"]
    for i, bag in enumerate(pd.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in bag]))
    return "\n".join(lines) + "\n"
