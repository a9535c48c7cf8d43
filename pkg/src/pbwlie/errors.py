"""Exception types shared across the package."""


class PbwLieError(Exception):
    """Base class for all library errors."""


class DivisionByNonUnit(PbwLieError, ZeroDivisionError):
    pass


class InternalMismatch(PbwLieError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class BadConstantTerm(PbwLieError, ValueError):
    pass


class AlphabetViolation(PbwLieError, ValueError):
    pass


class SolveFailure(PbwLieError, ArithmeticError):
    """A linear system that must be consistent turned out not to be."""


class InvalidPosition(PbwLieError, IndexError):
    pass


class AxiomViolation(PbwLieError, AssertionError):
    def __init__(self, axiom: str, witness, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at {witness!r} {detail}".strip())


class DeskScaleExceeded(PbwLieError, ValueError):
    pass


class ExpressionSyntaxError(PbwLieError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownGenerator(ExpressionSyntaxError):
    pass


class TruncationMissing(ExpressionSyntaxError):
    pass


class NotLieElement(PbwLieError, ValueError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
