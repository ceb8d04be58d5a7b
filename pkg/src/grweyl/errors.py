"""Exception types shared across the package."""


class GrweylError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(GrweylError):
    """A graph / labeling / expression file failed to parse."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(GrweylError):
    """An operation was called on input violating its stated hypotheses."""

    def __init__(self, message, hypothesis=None):
        self.hypothesis = hypothesis
        super().__init__(message)


class NotComposableError(GrweylError):
    """Two groupoid elements (or a candidate triple) do not compose."""


class BisectionError(GrweylError):
    """A family of path pairs does not represent a bisection."""


class SearchExhaustedError(GrweylError):
    """A bounded search ran out of budget before finding a certificate."""

    def __init__(self, message, detail=None):
        self.detail = detail
        super().__init__(message)


class InconsistencyError(GrweylError):
    """A verification step found a counterexample to a claimed identity."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
