"""Exceptions raised across the package."""


class PipeDreamError(Exception):
    """Base class for all errors raised by this package."""


class InvalidShape(PipeDreamError, ValueError):
    pass


class InvalidFilling(PipeDreamError, ValueError):
    """A pipe leaves the shape somewhere other than the ending path."""


class NotReduced(PipeDreamError, ValueError):
    pass


class NotFlippable(PipeDreamError, ValueError):
    pass


class CyclicGraph(PipeDreamError, ValueError):
    pass


class NotSortable(PipeDreamError, ValueError):
    pass


class NotBelow(PipeDreamError, ValueError):
    """The permutation to insert is not below the exit permutation."""


class NotComplete(PipeDreamError, ValueError):
    pass


class DifferentContext(PipeDreamError, ValueError):
    """Two pipe dreams do not share the same shape and exit permutation."""


class InternalInconsistency(PipeDreamError, RuntimeError):
    """An algorithm reached a state its invariants rule out."""
