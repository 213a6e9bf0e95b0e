"""Edge-universal labeling problems given by a ``c x c`` predicate table.

A labeling ``L`` of a graph is valid when ``table[L(tail)][L(head)]`` holds
on every edge.  For undirected problems the table must be symmetric, so the
orientation of an undirected edge does not matter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (AsymmetricUndirectedPredicate, DimensionMismatch, FormatError,
                     ProblemGraphMismatch)
from .graph import Graph

UNASSIGNED = None


@dataclass(frozen=True)
class LabelingProblem:
    c: int
    table: tuple[tuple[bool, ...], ...]
    directed: bool = False
    name: str = "custom"

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("alphabet size c must be >= 1")
        rows = tuple(tuple(bool(x) for x in row) for row in self.table)
        if len(rows) != self.c or any(len(row) != self.c for row in rows):
            raise DimensionMismatch(f"predicate table must be {self.c}x{self.c}")
        if not self.directed:
            for a in range(self.c):
                for b in range(a + 1, self.c):
                    if rows[a][b] != rows[b][a]:
                        raise AsymmetricUndirectedPredicate(
                            f"undirected predicate is asymmetric: P({a},{b}) != P({b},{a})")
        object.__setattr__(self, "table", rows)

    def allows(self, tail_label: int, head_label: int) -> bool:
        return self.table[tail_label][head_label]

    def as_bits(self):
        return [[int(x) for x in row] for row in self.table]


def coloring(c: int) -> LabelingProblem:
    if c < 1:
        raise ValueError("coloring needs c >= 1")
    return LabelingProblem(c, tuple(tuple(a != b for b in range(c)) for a in range(c)),
                           False, f"coloring:{c}")


def independent_set() -> LabelingProblem:
    return LabelingProblem(2, ((True, True), (True, False)), False, "indep")


def downset() -> LabelingProblem:
    """``L(head) = 1`` forces ``L(tail) = 1``; only ``P(0, 1)`` is false."""
    return LabelingProblem(2, ((True, False), (True, True)), True, "downset")


def builtin(kind: str, c: int | None = None) -> LabelingProblem:
    if kind == "coloring":
        if c is None:
            raise ValueError("coloring needs c")
        return coloring(c)
    if kind in ("independent_set", "indep"):
        return independent_set()
    if kind == "downset":
        return downset()
    raise ValueError(f"unknown built-in problem {kind!r}")


def custom(c: int, table, directed: bool = False, name: str = "custom") -> LabelingProblem:
    table = [list(row) for row in table]
    if len(table) != c or any(len(row) != c for row in table):
        raise DimensionMismatch(f"predicate table must be {c}x{c}")
    return LabelingProblem(c, table, directed, name)


def parse_predicate(text: str, name: str = "custom") -> LabelingProblem:
    """Parse ``c <c> <u|d>`` followed by ``c`` rows of ``c`` bits."""
    rows = []
    c = directed = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if c is None:
            if len(parts) != 3 or parts[0] != "c" or parts[2] not in ("u", "d"):
                raise FormatError("header", f"malformed predicate header {line!r}; expected 'c <c> <u|d>'", lineno)
            try:
                c = int(parts[1])
            except ValueError:
                raise FormatError("header", f"non-integer alphabet size in {line!r}", lineno) from None
            if c < 1:
                raise FormatError("header", "alphabet size must be >= 1", lineno)
            directed = parts[2] == "d"
            continue
        if any(p not in ("0", "1") for p in parts):
            raise FormatError("row", f"predicate rows hold 0/1 bits, got {line!r}", lineno)
        if len(parts) != c:
            raise DimensionMismatch(f"line {lineno}: expected {c} bits, got {len(parts)}")
        rows.append([p == "1" for p in parts])
    if c is None:
        raise FormatError("header", "missing predicate header")
    if len(rows) != c:
        raise DimensionMismatch(f"expected {c} rows, got {len(rows)}")
    return custom(c, rows, directed, name)


def resolve_problem(arg: str, read_file=None) -> LabelingProblem:
    """Resolve ``coloring:<c>``, ``indep``, ``downset`` or ``custom:<path>``."""
    if arg.startswith("coloring:"):
        try:
            c = int(arg.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad color count in {arg!r}") from None
        return coloring(c)
    if arg in ("indep", "independent_set"):
        return independent_set()
    if arg == "downset":
        return downset()
    if arg.startswith("custom:"):
        path = arg.split(":", 1)[1]
        if read_file is None:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = read_file(path)
        return parse_predicate(text, name=arg)
    raise ValueError(f"unknown problem {arg!r}; use coloring:<c>, indep, downset or custom:<path>")


def check_compatible(g: Graph, prob: LabelingProblem) -> None:
    if prob.directed != g.directed:
        kind = "directed" if prob.directed else "undirected"
        other = "directed" if g.directed else "undirected"
        raise ProblemGraphMismatch(f"{kind} problem {prob.name!r} on a {other} graph")


def check_labeling(g: Graph, prob: LabelingProblem, labeling: Sequence[int]) -> bool:
    check_compatible(g, prob)
    if len(labeling) != g.n:
        raise ValueError(f"labeling has {len(labeling)} entries for {g.n} vertices")
    if any(not 0 <= x < prob.c for x in labeling):
        raise ValueError(f"labels must lie in 0..{prob.c - 1}")
    table = prob.table
    return all(table[labeling[u]][labeling[v]] for u, v in g.edges)


def check_partial(prob: LabelingProblem, partial, n: int) -> None:
    if len(partial) != n:
        raise ValueError(f"partial labeling has {len(partial)} entries for {n} vertices")
    for x in partial:
        if x is not UNASSIGNED and not 0 <= x < prob.c:
            raise ValueError(f"assigned labels must lie in 0..{prob.c - 1}")
