"""Exception hierarchy shared by every module."""


class DualSimError(ValueError):
    """Base class for all validation and runtime errors raised by dualsim."""


class NotHermitian(DualSimError):
    pass


class NotPositive(DualSimError):
    pass


class TraceNotOne(DualSimError):
    pass


class NotUnitary(DualSimError):
    pass


class DimMismatch(DualSimError):
    pass


class DimFactorMismatch(DualSimError):
    pass


class IndexOutOfRange(DualSimError, IndexError):
    pass


class NegativeProbability(DualSimError):
    pass


class NotNormalized(DualSimError):
    pass


class EmptyList(DualSimError):
    pass


class NonFinite(DualSimError):
    pass


class NonRealExpectation(DualSimError):
    pass


class InvalidProjectors(DualSimError):
    pass


class ZeroProbabilityBranch(DualSimError):
    pass


class GridMismatch(DualSimError):
    pass


class UnstableStep(DualSimError):
    pass


class InvalidConfig(DualSimError):
    pass


class UnknownScenario(InvalidConfig):
    pass


class InvalidParam(InvalidConfig):
    pass


class ParseError(InvalidConfig):
    """Malformed scenario file; ``line`` and ``column`` locate the problem when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
