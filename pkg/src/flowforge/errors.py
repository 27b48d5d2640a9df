"""Exception hierarchy shared by every flowforge module."""


class FlowforgeError(ValueError):
    """Base class for all input and precondition errors."""


class LoopRejected(FlowforgeError):
    pass


class VertexOutOfRange(FlowforgeError):
    pass


class UnknownVertex(FlowforgeError):
    pass


class UnknownEdge(FlowforgeError):
    pass


class EmptyOrFullSide(FlowforgeError):
    pass


class ParseError(FlowforgeError):
    def __init__(self, message, offset=0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class Graph6MultiEdgeUnsupported(FlowforgeError):
    pass


class TooSmall(FlowforgeError):
    pass


class SameVertex(FlowforgeError):
    pass


class PreconditionViolated(FlowforgeError):
    pass


class Disconnected(FlowforgeError):
    pass


class NotZeroSum(FlowforgeError):
    pass


class PreOrientationMismatch(FlowforgeError):
    pass


class IncompleteOrientation(FlowforgeError):
    pass


class BadModulus(FlowforgeError):
    pass


class IdenticalAnchors(FlowforgeError):
    pass


class MissingEdges(FlowforgeError):
    pass


class MissingAnchors(FlowforgeError):
    pass


class TooManyEdges(FlowforgeError):
    pass


class BudgetExceeded(FlowforgeError):
    pass


class NoPairFound(RuntimeError):
    """Raised when a splitting guaranteed to exist was not found.

    This is never a user error: it means the search or the max-flow is wrong.
    """
