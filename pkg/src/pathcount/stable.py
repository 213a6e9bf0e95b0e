"""Stable matchings as downsets of the rotation digraph.

Rotations are found by walking one maximal chain of the stable-matching
lattice: starting from the man-optimal matching, repeatedly expose a
rotation and eliminate it until the woman-optimal matching is reached.
Every rotation is eliminated exactly once along any such chain, and the
chain order is a linear extension of the rotation poset.

Precedence edges come from two rules over that chain:

* the rotation moving ``m`` to ``w`` precedes the one moving ``m`` away
  from ``w``;
* if a rotation moves ``m`` from ``w_i`` down to ``w_{i+1}`` and ``w`` sits
  strictly between them on ``m``'s list, the rotation at which ``w`` first
  gets a partner she prefers to ``m`` precedes it.

The downsets of the resulting DAG biject with the stable matchings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .decomposition import NicePathDecomposition, decompose
from .errors import BudgetExceeded, FormatError, MissingObjective, NotADownset
from .graph import Graph
from .labeling import TraceSampler, count_valid_labelings
from .problems import downset

Matching = tuple  # Matching[m] is the woman matched to man m


@dataclass(frozen=True)
class SMInstance:
    n: int
    men_prefs: tuple[tuple[int, ...], ...]
    women_prefs: tuple[tuple[int, ...], ...]
    objective_women: Optional[tuple[int, ...]] = None
    objective_men: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("instance needs n >= 1")
        for side, prefs in (("man", self.men_prefs), ("woman", self.women_prefs)):
            if len(prefs) != n:
                raise ValueError(f"expected {n} {side} preference lists, got {len(prefs)}")
            for i, lst in enumerate(prefs):
                if sorted(lst) != list(range(n)):
                    raise ValueError(f"{side} {i + 1}'s list is not a permutation of 1..{n}")
        for name in ("objective_women", "objective_men"):
            obj = getattr(self, name)
            if obj is not None and sorted(obj) != list(range(n)):
                raise ValueError(f"{name} is not a permutation of 1..{n}")
        object.__setattr__(self, "men_prefs", tuple(tuple(x) for x in self.men_prefs))
        object.__setattr__(self, "women_prefs", tuple(tuple(x) for x in self.women_prefs))

    def man_rank(self):
        rank = [[0] * self.n for _ in range(self.n)]
        for m, lst in enumerate(self.men_prefs):
            for i, w in enumerate(lst):
                rank[m][w] = i
        return rank

    def woman_rank(self):
        rank = [[0] * self.n for _ in range(self.n)]
        for w, lst in enumerate(self.women_prefs):
            for i, m in enumerate(lst):
                rank[w][m] = i
        return rank


def parse_sm(text: str) -> SMInstance:
    """Parse a ``.sm`` document; people are 1-indexed in the file."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            rows.append((lineno, line.split()))
    if not rows:
        raise FormatError("header", "empty instance")
    lineno, head = rows[0]
    if len(head) != 1:
        raise FormatError("header", "first line must hold n alone", lineno)
    try:
        n = int(head[0])
    except ValueError:
        raise FormatError("header", f"non-integer size {head[0]!r}", lineno) from None
    if n < 1:
        raise FormatError("header", "n must be >= 1", lineno)
    body = rows[1:]
    objectives = [r for r in body if r[1][0] == "o"]
    lists = [r for r in body if r[1][0] != "o"]
    if len(lists) != 2 * n:
        raise FormatError("size", f"expected {2 * n} preference lines, got {len(lists)}")
    if len(objectives) not in (0, 2):
        raise FormatError("objective", "objective rankings come as a pair of 'o' lines")

    def perm(lineno, tokens):
        try:
            vals = [int(t) - 1 for t in tokens]
        except ValueError:
            raise FormatError("list", f"non-integer entry in {' '.join(tokens)!r}", lineno) from None
        if len(vals) != n:
            raise FormatError("size", f"expected {n} entries, got {len(vals)}", lineno)
        if sorted(vals) != list(range(n)):
            raise FormatError("permutation", f"{' '.join(tokens)!r} is not a permutation of 1..{n}", lineno)
        return tuple(vals)

    men = [perm(ln, toks) for ln, toks in lists[:n]]
    women = [perm(ln, toks) for ln, toks in lists[n:]]
    obj_w = obj_m = None
    if objectives:
        obj_w = perm(objectives[0][0], objectives[0][1][1:])
        obj_m = perm(objectives[1][0], objectives[1][1][1:])
    return SMInstance(n, tuple(men), tuple(women), obj_w, obj_m)


def serialize_sm(inst: SMInstance) -> str:
    lines = [str(inst.n)]
    for lst in inst.men_prefs + inst.women_prefs:
        lines.append(" ".join(str(x + 1) for x in lst))
    if inst.objective_women is not None and inst.objective_men is not None:
        lines.append("o " + " ".join(str(x + 1) for x in inst.objective_women))
        lines.append("o " + " ".join(str(x + 1) for x in inst.objective_men))
    return "\n".join(lines) + "\n"


def gale_shapley(inst: SMInstance, proposing: str = "men") -> Matching:
    """Proposer-optimal stable matching, returned as ``man -> woman``."""
    if proposing not in ("men", "women"):
        raise ValueError("proposing must be 'men' or 'women'")
    n = inst.n
    if proposing == "men":
        props, rank = inst.men_prefs, inst.woman_rank()
    else:
        props, rank = inst.women_prefs, inst.man_rank()
    engaged = [-1] * n  # receiver -> proposer
    nxt = [0] * n
    free = list(range(n - 1, -1, -1))
    while free:
        p = free.pop()
        r = props[p][nxt[p]]
        nxt[p] += 1
        cur = engaged[r]
        if cur == -1:
            engaged[r] = p
        elif rank[r][p] < rank[r][cur]:
            engaged[r] = p
            free.append(cur)
        else:
            free.append(p)
    if proposing == "men":
        out = [0] * n
        for w, m in enumerate(engaged):
            out[m] = w
        return tuple(out)
    return tuple(engaged)


def blocking_pairs(inst: SMInstance, matching: Sequence[int]):
    mrank, wrank = inst.man_rank(), inst.woman_rank()
    husband = [0] * inst.n
    for m, w in enumerate(matching):
        husband[w] = m
    return [(m, w) for m in range(inst.n) for w in range(inst.n)
            if mrank[m][w] < mrank[m][matching[m]] and wrank[w][m] < wrank[w][husband[w]]]


def is_stable(inst: SMInstance, matching: Sequence[int]) -> bool:
    if sorted(matching) != list(range(inst.n)):
        return False
    return not blocking_pairs(inst, matching)


@dataclass(frozen=True)
class RotationDigraph:
    rotations: tuple[tuple[tuple[int, int], ...], ...]
    edges: tuple[tuple[int, int], ...]
    man_optimal: Matching
    woman_optimal: Matching

    @property
    def graph(self) -> Graph:
        return Graph(len(self.rotations), self.edges, directed=True)


def _expose(inst, match, husband, ptr, mrank, wrank):
    """Find one rotation exposed in ``match``; returns its men in cycle order or None."""
    n = inst.n
    succ = [-1] * n
    for m in range(n):
        lst = inst.men_prefs[m]
        i = max(ptr[m], mrank[m][match[m]] + 1)
        # a woman who stops preferring m to her partner never prefers him again
        while i < n and wrank[lst[i]][m] > wrank[lst[i]][husband[lst[i]]]:
            i += 1
        ptr[m] = i
        if i < n:
            succ[m] = husband[lst[i]]
    state = [0] * n  # 0 new, 1 on current walk, 2 finished
    for start in range(n):
        if state[start]:
            continue
        walk = []
        m = start
        while m != -1 and state[m] == 0:
            state[m] = 1
            walk.append(m)
            m = succ[m]
        if m != -1 and state[m] == 1:
            cyc = walk[walk.index(m):]
            k = cyc.index(min(cyc))
            return cyc[k:] + cyc[:k]
        for x in walk:
            state[x] = 2
    return None


def build_rotation_digraph(inst: SMInstance) -> RotationDigraph:
    n = inst.n
    mrank, wrank = inst.man_rank(), inst.woman_rank()
    m0 = gale_shapley(inst, "men")
    match = list(m0)
    husband = [0] * n
    for m, w in enumerate(match):
        husband[w] = m
    ptr = [0] * n
    rotations = []
    moves_to = {}      # (m, w) -> rotation that moved m to w
    history = [[(None, husband[w])] for w in range(n)]  # per woman: (rotation, new partner)
    while True:
        men = _expose(inst, match, husband, ptr, mrank, wrank)
        if men is None:
            break
        r = len(rotations)
        pairs = tuple((m, match[m]) for m in men)
        rotations.append(pairs)
        k = len(pairs)
        for i, (m, _) in enumerate(pairs):
            w_next = pairs[(i + 1) % k][1]
            match[m] = w_next
            husband[w_next] = m
            moves_to[(m, w_next)] = r
            history[w_next].append((r, m))

    edges = set()
    for r, pairs in enumerate(rotations):
        k = len(pairs)
        for i, (m, w) in enumerate(pairs):
            w_next = pairs[(i + 1) % k][1]
            before = moves_to.get((m, w))
            if before is not None:
                edges.add((before, r))
            lst = inst.men_prefs[m]
            for w_mid in lst[mrank[m][w] + 1:mrank[m][w_next]]:
                hist = history[w_mid]
                if wrank[w_mid][hist[0][1]] < wrank[w_mid][m]:
                    continue  # she already prefers her man-optimal partner to m
                for rot, partner in hist[1:]:
                    if wrank[w_mid][partner] < wrank[w_mid][m]:
                        if rot != r:
                            edges.add((rot, r))
                        break
    return RotationDigraph(tuple(rotations), tuple(sorted(edges)), m0, tuple(match))


def eliminate(matching: Sequence[int], rotation) -> Matching:
    out = list(matching)
    k = len(rotation)
    for i, (m, _) in enumerate(rotation):
        out[m] = rotation[(i + 1) % k][1]
    return tuple(out)


def downset_to_matching(rd: RotationDigraph, chosen) -> Matching:
    """Matching reached from the man-optimal one by eliminating ``chosen``."""
    chosen = set(chosen)
    if any(not 0 <= r < len(rd.rotations) for r in chosen):
        raise NotADownset("rotation index out of range")
    for a, b in rd.edges:
        if b in chosen and a not in chosen:
            raise NotADownset(f"rotation {b} is chosen but its predecessor {a} is not")
    match = rd.man_optimal
    # discovery order is a linear extension of the precedence relation
    for r in sorted(chosen):
        match = eliminate(match, rd.rotations[r])
    return match


def _decomposition(g: Graph, max_nodes=200_000, budget_ms=None) -> NicePathDecomposition:
    try:
        return decompose(g, "exact", max_nodes=max_nodes, budget_ms=budget_ms)
    except BudgetExceeded:
        return decompose(g, "greedy")


def count_stable_matchings(inst: SMInstance, max_nodes=200_000, budget_ms=None) -> int:
    rd = build_rotation_digraph(inst)
    g = rd.graph
    return count_valid_labelings(g, _decomposition(g, max_nodes, budget_ms), downset())


class StableMatchingSampler:
    """Uniform stable matchings via uniform downsets of the rotation digraph."""

    def __init__(self, inst: SMInstance, max_nodes=200_000, budget_ms=None):
        self.inst = inst
        self.digraph = build_rotation_digraph(inst)
        g = self.digraph.graph
        self.decomposition = _decomposition(g, max_nodes, budget_ms)
        self.downsets = TraceSampler(g, self.decomposition, downset())
        self.total = self.downsets.total

    def sample(self, rng: random.Random) -> Matching:
        labels = self.downsets.sample(rng)
        return downset_to_matching(self.digraph, [r for r, x in enumerate(labels) if x])


def sample_stable_matching(inst: SMInstance, rng: random.Random) -> Matching:
    return StableMatchingSampler(inst).sample(rng)


def range_of(inst: SMInstance) -> int:
    """Smallest ``k`` with every rank within ``k - 1`` of the objective rank."""
    if inst.objective_women is None or inst.objective_men is None:
        raise MissingObjective("range needs objective rankings for both sides")
    obj_w = {w: i for i, w in enumerate(inst.objective_women)}
    obj_m = {m: i for i, m in enumerate(inst.objective_men)}
    worst = 0
    for lst in inst.men_prefs:
        worst = max(worst, max(abs(i - obj_w[w]) for i, w in enumerate(lst)))
    for lst in inst.women_prefs:
        worst = max(worst, max(abs(i - obj_m[m]) for i, m in enumerate(lst)))
    return worst + 1


def _banded_list(objective, k, rng):
    """Random permutation placing each candidate within ``k - 1`` of its objective rank.

    At position ``pos`` exactly the first ``k`` pending candidates (in
    objective order) are eligible; the first of them is forced once its
    band ends at ``pos``.
    """
    rank = {q: i for i, q in enumerate(objective)}
    pending = list(objective)
    out = []
    for pos in range(len(objective)):
        if rank[pending[0]] + k - 1 == pos:
            pick = pending[0]
        else:
            window = pending[:k]
            pick = window[rng.randrange(len(window))]
        out.append(pick)
        pending.remove(pick)
    return tuple(out)


def gen_k_range(n: int, k: int, rng: random.Random) -> SMInstance:
    """Random instance whose lists all stay within ``k - 1`` of random objective rankings."""
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    obj_w = list(range(n))
    obj_m = list(range(n))
    rng.shuffle(obj_w)
    rng.shuffle(obj_m)
    men = tuple(_banded_list(obj_w, k, rng) for _ in range(n))
    women = tuple(_banded_list(obj_m, k, rng) for _ in range(n))
    return SMInstance(n, men, women, tuple(obj_w), tuple(obj_m))


def random_instance(n: int, rng: random.Random) -> SMInstance:
    def perm():
        p = list(range(n))
        rng.shuffle(p)
        return tuple(p)
    return SMInstance(n, tuple(perm() for _ in range(n)), tuple(perm() for _ in range(n)))
