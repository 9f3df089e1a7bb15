"""Exception hierarchy."""


class VspError(Exception):
    """Base class for errors raised by this package."""


class GraphError(VspError, ValueError):
    pass


class ParseError(VspError, ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class AdjacentPairError(VspError, ValueError):
    """Raised when an operation needs a non-adjacent vertex pair."""


class CompleteGraphError(GraphError):
    pass


class GuardError(VspError):
    """An exhaustive routine was asked to handle a graph above its size guard."""


class NumericalError(VspError, ArithmeticError):
    pass
