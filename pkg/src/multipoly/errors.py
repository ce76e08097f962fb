"""Exception hierarchy shared by all multipoly modules."""


class MultipolyError(Exception):
    """Base class for every error raised by this package."""


class UnknownNode(MultipolyError, KeyError):
    def __init__(self, node):
        super().__init__(node)
        self.node = node

    def __str__(self):
        return f"unknown node {self.node!r}"


class ParseError(MultipolyError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class InvariantViolation(MultipolyError, ValueError):
    pass


class SizeLimitExceeded(MultipolyError):
    pass


class NotANestPointSequence(MultipolyError, ValueError):
    def __init__(self, index, node):
        self.index = index
        self.node = node
        super().__init__(f"order[{index}] = {node!r} is not a nest point of the residual hypergraph")


class AmbiguousF(MultipolyError):
    pass


class NotAChain(MultipolyError, ValueError):
    pass


class NotBetaAcyclic(MultipolyError, ValueError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(
            f"hypergraph is not beta-acyclic; nest-point elimination stops at "
            f"{len(residual.nodes)} nodes / {len(residual.edges)} edges"
        )


class InvalidW(MultipolyError, ValueError):
    pass


class BadParameter(MultipolyError, ValueError):
    pass


class HypothesisViolated(MultipolyError, ValueError):
    pass


class RequiresScaling(MultipolyError):
    pass


class BoundViolation(MultipolyError, AssertionError):
    """A proven size bound failed on a concrete instance."""
