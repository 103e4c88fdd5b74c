"""Exception hierarchy shared by all fractaloid modules."""


class FractaloidError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(FractaloidError):
    """A graph (or graph-derived value) is structurally invalid, or values
    from different graphs were mixed in one operation."""


class UnknownVertexError(GraphError):
    """A vertex id was looked up in a graph that does not declare it."""


class ParameterError(FractaloidError):
    """An argument is outside the documented domain of an operation."""


class LimitError(FractaloidError):
    """A configured computation budget (states, paths, nodes) was exceeded."""


class DisconnectedGraphError(FractaloidError):
    """An operation restricted to connected graphs received a disconnected
    (or empty) graph."""


class NotFractalError(FractaloidError):
    """An operation restricted to fractal graphs received a non-fractal one."""
