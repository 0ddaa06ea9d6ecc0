"""Exception hierarchy shared by every module."""


class TopologyError(Exception):
    """Base class for all engine errors."""


class ComplexError(TopologyError, ValueError):
    """Malformed simplicial complex input or invalid operation argument."""


class CapExceededError(TopologyError):
    """Subset enumeration requested beyond the configured vertex cap."""

    def __init__(self, m: int, cap: int):
        super().__init__(f"m={m} exceeds the enumeration cap of {cap} vertices")
        self.m = m
        self.cap = cap


class HypothesisError(TopologyError):
    """A hypothesis required by a splitting or an algorithm does not hold for the input."""


class DisconnectedGraphError(HypothesisError):
    pass


class NoLowDegreeVertexError(HypothesisError):
    pass


class DegreeBoundError(HypothesisError):
    pass


class KunnethTorsionError(TopologyError):
    """Künneth formula requested with torsion in more than one factor."""


class ExpressionError(TopologyError):
    pass


class ParseError(TopologyError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


class EngineInvariantError(TopologyError):
    """An internal consistency check failed; indicates a bug, not bad input."""
