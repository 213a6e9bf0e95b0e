"""Brute-force references for testing the engines.

Nothing here shares code with the dynamic programs; every function works
straight from the definitions and gives up loudly (``BudgetExceeded``)
instead of silently truncating.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations, product

from .errors import BudgetExceeded
from .graph import Graph
from .problems import LabelingProblem, check_labeling


@dataclass(frozen=True)
class EnumerationBudget:
    max_items: int = 2_000_000
    max_seconds: float = 60.0

    def __post_init__(self):
        if self.max_items <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT = EnumerationBudget()


class _Clock:
    def __init__(self, budget):
        self.budget = budget
        self.deadline = time.monotonic() + budget.max_seconds

    def need(self, items, what):
        if items > self.budget.max_items:
            raise BudgetExceeded(f"{what}: {items} candidates exceed the budget of {self.budget.max_items}")

    def tick(self):
        if time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget of {self.budget.max_seconds}s exhausted")


def enumerate_valid_labelings(g: Graph, prob: LabelingProblem, budget: EnumerationBudget = DEFAULT):
    clock = _Clock(budget)
    clock.need(prob.c ** g.n, "labelings")
    out = []
    for i, labels in enumerate(product(range(prob.c), repeat=g.n)):
        if i % 4096 == 0:
            clock.tick()
        if check_labeling(g, prob, labels):
            out.append(list(labels))
    return out


def enumerate_cliques(g: Graph, budget: EnumerationBudget = DEFAULT):
    clock = _Clock(budget)
    clock.need(2 ** g.n, "subsets")
    edges = {frozenset(e) for e in g.edges}
    out = []
    for r in range(1, g.n + 1):
        for sub in combinations(range(g.n), r):
            clock.tick()
            if all(frozenset(p) in edges for p in combinations(sub, 2)):
                out.append(set(sub))
    return out


def enumerate_stable_matchings(inst, budget: EnumerationBudget = DEFAULT):
    """All perfect matchings (``man -> woman``) with no blocking pair."""
    clock = _Clock(budget)
    n = inst.n
    clock.need(_factorial(n), "matchings")
    out = []
    for match in permutations(range(n)):
        clock.tick()
        wife = dict(enumerate(match))
        husband = {w: m for m, w in wife.items()}
        blocked = False
        for m in range(n):
            for w in range(n):
                if (inst.men_prefs[m].index(w) < inst.men_prefs[m].index(wife[m])
                        and inst.women_prefs[w].index(m) < inst.women_prefs[w].index(husband[w])):
                    blocked = True
                    break
            if blocked:
                break
        if not blocked:
            out.append(tuple(match))
    return out


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def exact_pathwidth(g: Graph, budget: EnumerationBudget = DEFAULT) -> int:
    """Pathwidth as the vertex separation number, by a subset DP.

    ``best[S]`` is the least achievable maximum boundary over layouts that
    place exactly ``S`` first.
    """
    clock = _Clock(budget)
    clock.need(2 ** g.n, "vertex subsets")
    if g.n == 0:
        return -1
    nbrs = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def boundary(s):
        return sum(1 for u in s if nbrs[u] - s)

    best = {frozenset(): 0}
    for size in range(1, g.n + 1):
        clock.tick()
        for sub in combinations(range(g.n), size):
            s = frozenset(sub)
            best[s] = max(boundary(s), min(best[s - {v}] for v in s))
    return best[frozenset(range(g.n))]


def has_directed_cycle(g: Graph) -> bool:
    """True if some vertex can reach itself along arcs (plain DFS from every vertex)."""
    succ = [[] for _ in range(g.n)]
    for u, v in g.edges:
        succ[u].append(v)
    for start in range(g.n):
        stack = list(succ[start])
        seen = set()
        while stack:
            x = stack.pop()
            if x == start:
                return True
            if x not in seen:
                seen.add(x)
                stack.extend(succ[x])
    return False


def ancestors(g: Graph, v: int) -> set:
    """Vertices with a directed path to ``v``."""
    pred = [[] for _ in range(g.n)]
    for a, b in g.edges:
        pred[b].append(a)
    out = set()
    stack = list(pred[v])
    while stack:
        x = stack.pop()
        if x not in out:
            out.add(x)
            stack.extend(pred[x])
    return out
