"""Counting and uniform sampling of valid labelings over a nice path decomposition.

The state after each event is a dense table over labelings of the current
bag.  With the bag kept sorted as ``b_0 < b_1 < ...``, the labeling that
gives ``b_j`` the label ``x_j`` lives at index ``sum(x_j * c**j)``.  Entry
values count valid labelings of the graph induced by every vertex seen so
far that restrict to that bag labeling.  All counts are Python ints.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass
from itertools import product

from .errors import CycleFound, NoValidLabeling, NotADAG
from .graph import Graph, check_dag
from .decomposition import Event, NicePathDecomposition
from .problems import LabelingProblem, check_compatible, check_partial, downset


@dataclass
class DPTrace:
    """Every layer of one forward pass; ``tables[t]`` is the table after event ``t + 1``."""

    events: tuple[Event, ...]
    bags: list[tuple[int, ...]]
    tables: list[list[int]]

    @property
    def total(self) -> int:
        return self.tables[-1][0] if self.tables else 1


def choose_weighted(rng: random.Random, weights) -> int:
    """Index ``i`` with probability ``weights[i] / sum(weights)``, exactly.

    ``randrange`` on ints rejects draws of uniform random bits, so big-integer
    weights keep exact proportions.
    """
    total = sum(weights)
    if total <= 0:
        raise NoValidLabeling("no positive weight to choose from")
    r = rng.randrange(total)
    for i, w in enumerate(weights):
        if r < w:
            return i
        r -= w
    raise AssertionError("unreachable")


def _prepare(g, npd, prob):
    check_compatible(g, prob)
    if prob == downset():
        try:
            check_dag(g)
        except CycleFound as exc:
            raise NotADAG(f"downsets need a DAG; found {exc}") from None
    npd.check(g)


class _Plan:
    """Event list compiled against a graph, reusable across forward passes.

    ``steps`` holds ``(is_insert, vertex, bag position, signature)``.  The
    signature of an insertion is a small int naming the pattern
    ``(bag size, position, constraints)``, where constraints are
    ``(neighbour position, v is the tail)`` pairs in the new bag; it is -1
    when the inserted vertex has no neighbour in the bag.  Patterns repeat
    heavily along long decompositions, so masks are built once per pattern.
    """

    def __init__(self, g: Graph, npd: NicePathDecomposition):
        nbrs = g.neighbor_sets
        outs = g.out_sets if g.directed else None
        sig_ids = {}
        bag: list[int] = []
        steps = []
        for is_ins, v in npd.events:
            p = bisect_left(bag, v)
            if is_ins:
                near = nbrs[v]
                if outs is None:
                    key = [q for q, w in enumerate(bag) if w in near]
                else:
                    key = []
                    for q, w in enumerate(bag):
                        if w in near:
                            if w in outs[v]:
                                key.append(q)
                            if v in outs[w]:
                                key.append(~q)
                bag.insert(p, v)
                if key:
                    key = (len(bag), p, *key)
                    sig = sig_ids.get(key)
                    if sig is None:
                        sig = sig_ids[key] = len(sig_ids)
                else:
                    sig = -1
                steps.append((True, v, p, sig))
            else:
                del bag[p]
                steps.append((False, v, p, -1))
        self.steps = steps
        self.signatures = [None] * len(sig_ids)
        for (size, p, *raw), sig in sig_ids.items():
            # raw entries are old bag positions, complemented when v is the head
            constraints = tuple((q + (q >= p), True) if q >= 0 else (~q + (~q >= p), False) for q in raw)
            self.signatures[sig] = (size, p, constraints)
        self.width = npd.width


class _Masks:
    """0/1 masks for insertion steps, built lazily per (signature, fixed label)."""

    def __init__(self, prob: LabelingProblem, plan: _Plan):
        self.c = prob.c
        self.table = prob.table
        self.plan = plan
        self.free = [self._build(*key, None) for key in plan.signatures]
        self.cache = {}

    def get(self, sig, pos, size, fixed):
        key = (sig, pos, size, fixed)
        mask = self.cache.get(key)
        if mask is None:
            size, pos, constraints = self.plan.signatures[sig] if sig >= 0 else (size, pos, ())
            mask = self.cache[key] = self._build(size, pos, constraints, fixed)
        return mask

    def _build(self, size, pos, constraints, fixed):
        table = self.table
        mask = []
        # product() varies its last slot fastest; digit j sits at index size-1-j
        for labels in product(range(self.c), repeat=size):
            mine = labels[size - 1 - pos]
            ok = fixed is None or mine == fixed
            if ok:
                for q, v_is_tail in constraints:
                    other = labels[size - 1 - q]
                    if not (table[mine][other] if v_is_tail else table[other][mine]):
                        ok = False
                        break
            mask.append(ok)
        return mask


def _forward(g: Graph, npd: NicePathDecomposition, prob: LabelingProblem, partial=None,
             keep=False, plan=None, masks=None):
    c = prob.c
    if plan is None:
        plan = _Plan(g, npd)
    if masks is None:
        masks = _Masks(prob, plan)
    free = masks.free
    powers = [c ** j for j in range(plan.width + 2)]
    table = [1]
    tables = [] if keep else None
    size = 0
    for is_ins, v, p, sig in plan.steps:
        cp = powers[p]
        if is_ins:
            size += 1
            if cp == len(table):
                table = table * c
            else:
                expanded = []
                for h in range(0, len(table), cp):
                    expanded.extend(table[h:h + cp] * c)
                table = expanded
            fixed = None if partial is None else partial[v]
            if fixed is not None:
                mask = masks.get(sig, p, size, fixed)
            elif sig >= 0:
                mask = free[sig]
            else:
                mask = None
            if mask is not None:
                table = [x if ok else 0 for x, ok in zip(table, mask)]
        else:
            size -= 1
            # x + 0 still copies a big int, so zero summands are skipped
            if c == 2 and cp == 1:
                table = [(a + b if b else a) if a else b for a, b in zip(table[0::2], table[1::2])]
            elif c == 1:
                pass
            else:
                block = cp * c
                merged = []
                for h in range(0, len(table), block):
                    merged.extend(map(_sum_nonzero, zip(*(table[h + s * cp:h + (s + 1) * cp] for s in range(c)))))
                table = merged
        if keep:
            tables.append(table)
    if keep:
        return DPTrace(npd.events, npd.bags(), tables)
    return table[0]


def _sum_nonzero(values):
    total = 0
    for x in values:
        if x:
            total = total + x if total else x
    return total


def count_valid_labelings(g: Graph, npd: NicePathDecomposition, prob: LabelingProblem) -> int:
    """Exact number of valid labelings of ``g``."""
    _prepare(g, npd, prob)
    return _forward(g, npd, prob)


def count_extensions(g: Graph, npd: NicePathDecomposition, prob: LabelingProblem, partial) -> int:
    """Number of valid labelings agreeing with ``partial`` (``None`` = unassigned)."""
    _prepare(g, npd, prob)
    check_partial(prob, partial, g.n)
    return _forward(g, npd, prob, list(partial))


def forward_trace(g: Graph, npd: NicePathDecomposition, prob: LabelingProblem, partial=None) -> DPTrace:
    _prepare(g, npd, prob)
    if partial is not None:
        check_partial(prob, partial, g.n)
        partial = list(partial)
    return _forward(g, npd, prob, partial, keep=True)


class ReferenceSampler:
    """Vertex-by-vertex sampler driven by extension counts.

    Vertices are fixed in id order; each label is drawn with probability
    proportional to the number of valid extensions it leaves.  Extension
    counts are memoised per partial labeling (``cache=True``), which makes
    drawing many samples from one instance cheap without changing the
    distribution or the random stream.
    """

    def __init__(self, g, npd, prob, cache=True):
        _prepare(g, npd, prob)
        self.g, self.npd, self.prob = g, npd, prob
        self.memo = {} if cache else None
        self.plan = _Plan(g, npd)
        self.masks = _Masks(prob, self.plan)
        self.total = self._extensions((None,) * g.n)
        if self.total == 0:
            raise NoValidLabeling(f"{prob.name!r} has no valid labeling on this graph")

    def _extensions(self, partial):
        if self.memo is None:
            return _forward(self.g, self.npd, self.prob, partial, plan=self.plan, masks=self.masks)
        hit = self.memo.get(partial)
        if hit is None:
            hit = self.memo[partial] = _forward(self.g, self.npd, self.prob, partial,
                                                plan=self.plan, masks=self.masks)
        return hit

    def sample(self, rng: random.Random) -> list[int]:
        partial = [None] * self.g.n
        for v in range(self.g.n):
            weights = []
            for sigma in range(self.prob.c):
                partial[v] = sigma
                weights.append(self._extensions(tuple(partial)))
            partial[v] = choose_weighted(rng, weights)
        return partial


class TraceSampler:
    """Backward replay over a stored forward pass.

    Walking the events in reverse, each vertex gets its label at its removal
    event, drawn in proportion to the previous layer's counts given the
    labels already fixed for the rest of that bag.  The product of these
    ratios telescopes to ``1 / total``.
    """

    def __init__(self, g, npd, prob):
        self.trace = forward_trace(g, npd, prob)
        self.n = g.n
        self.c = prob.c
        self.total = self.trace.total
        if self.total == 0:
            raise NoValidLabeling(f"{prob.name!r} has no valid labeling on this graph")
        self.steps = []
        trace = self.trace
        for t in range(len(trace.events) - 1, -1, -1):
            is_ins, v = trace.events[t]
            if is_ins:
                continue
            prev_bag = trace.bags[t - 1]
            prev_table = trace.tables[t - 1]
            p = prev_bag.index(v)
            others = [(w, self.c ** j) for j, w in enumerate(prev_bag) if j != p]
            self.steps.append((v, self.c ** p, others, prev_table))

    def sample(self, rng: random.Random) -> list[int]:
        labels = [0] * self.n
        c = self.c
        for v, stride, others, table in self.steps:
            base = 0
            for w, weight in others:
                base += labels[w] * weight
            labels[v] = choose_weighted(rng, [table[base + s * stride] for s in range(c)])
        return labels


def sample_labeling(g, npd, prob, rng: random.Random) -> list[int]:
    return ReferenceSampler(g, npd, prob, cache=False).sample(rng)


def sample_labeling_fast(g, npd, prob, rng: random.Random) -> list[int]:
    return TraceSampler(g, npd, prob).sample(rng)


def sample_labelings(g, npd, prob, rng: random.Random, count: int, method: str = "fast") -> list[list[int]]:
    """``count`` independent uniform samples drawn in sequence from ``rng``."""
    if method == "fast":
        sampler = TraceSampler(g, npd, prob)
    elif method == "reference":
        sampler = ReferenceSampler(g, npd, prob)
    else:
        raise ValueError(f"unknown sampler {method!r}")
    return [sampler.sample(rng) for _ in range(count)]
