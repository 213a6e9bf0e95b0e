"""Exception hierarchy shared by every module."""


class PathcountError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class FormatError(PathcountError, ValueError):
    """A malformed input document.

    ``kind`` is a short machine-readable tag (``header``, ``range``,
    ``self-loop``, ...); ``line`` is the 1-based offending line, if any.
    """

    def __init__(self, kind, message, line=None):
        self.kind = kind
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class CycleFound(PathcountError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"directed cycle: {' -> '.join(map(str, self.cycle))}")


class InvalidDecomposition(PathcountError):
    pass


class BudgetExceeded(PathcountError):
    """Search or enumeration gave up before reaching a definitive answer."""


class AsymmetricUndirectedPredicate(PathcountError, ValueError):
    pass


class DimensionMismatch(PathcountError, ValueError):
    pass


class ProblemGraphMismatch(PathcountError):
    pass


class NotADAG(PathcountError):
    pass


class NoValidLabeling(PathcountError):
    pass


class DirectedGraph(PathcountError):
    pass


class NotADownset(PathcountError):
    pass


class MissingObjective(PathcountError):
    pass
