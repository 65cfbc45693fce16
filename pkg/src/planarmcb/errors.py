"""Exception types raised across the package."""


class PlanarMcbError(Exception):
    """Base class for all package errors."""


class EulerViolation(PlanarMcbError):
    """The supplied drawing is not a plane embedding."""


class DuplicateVertex(PlanarMcbError):
    pass


class NegativeWeight(PlanarMcbError):
    pass


class Disconnected(PlanarMcbError):
    pass


class NotFinalized(PlanarMcbError):
    pass


class NotAncestor(PlanarMcbError):
    pass


class InsufficientRank(PlanarMcbError):
    pass


class TooSmall(PlanarMcbError):
    pass


class SeparatorTooLarge(PlanarMcbError):
    pass


class NotASubtree(PlanarMcbError):
    pass


class EdgeAbsent(PlanarMcbError):
    pass


class SameTree(PlanarMcbError):
    pass


class DegenerateWedge(PlanarMcbError):
    pass


class UnknownTriple(PlanarMcbError):
    pass


class SameVertex(PlanarMcbError):
    pass


class ParseError(PlanarMcbError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
