"""Exceptions raised by the domino library."""


class DominoError(Exception):
    """Base class for every library error the CLI reports as a domain error."""


class GraphParseError(DominoError, ValueError):
    """Malformed graph6 or edge-list input.

    Exactly one of ``offset`` (graph6 byte offset) and ``line`` (edge-list
    line number, 1-based) is set.
    """

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        where = ""
        if offset is not None:
            where = f" at byte {offset}"
        elif line is not None:
            where = f" on line {line}"
        super().__init__(f"{message}{where}")
        self.offset = offset
        self.line = line


class CnfError(DominoError, ValueError):
    """Malformed or out-of-class DIMACS CNF input."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"{message} on line {line}" if line is not None else message)
        self.line = line


class UndefinedParameterError(DominoError, ValueError):
    """The requested parameter is not defined for this graph (minimum degree too small)."""


class HypothesisError(DominoError, ValueError):
    """A theorem's hypothesis does not hold for the given graph."""


class ConstructionError(DominoError, ValueError):
    """A family builder received parameters violating its preconditions."""


class OrientationError(DominoError, ValueError):
    """An orientation is invalid or not transitive."""

    def __init__(self, message: str, arcs: tuple[tuple[int, int], ...] = ()):
        super().__init__(message)
        self.arcs = arcs


class CapExceededError(DominoError, ValueError):
    """Instance larger than the exhaustive solver or enumeration supports."""


class BudgetExceededError(DominoError):
    """Branch and bound ran out of nodes before proving optimality."""

    def __init__(self, incumbent: tuple[int, ...], lower_bound: int, nodes: int):
        gap = len(incumbent) - lower_bound
        super().__init__(
            f"Node budget of {nodes} exhausted: best set has {len(incumbent)} vertices, "
            f"lower bound {lower_bound} (gap {gap})"
        )
        self.incumbent = incumbent
        self.lower_bound = lower_bound
        self.gap = gap
        self.nodes = nodes


class UnknownTheoremError(DominoError, KeyError):
    """No verification routine is registered under this id."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown theorem"
