"""Exception hierarchy shared by every solver and transformer."""


class DistColorError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstance(DistColorError, ValueError):
    """An instance violates one of its type invariants."""


class BudgetExceeded(DistColorError):
    """A search or DP would exceed its configured size cap."""


class NotSinglePath(DistColorError):
    pass


class NotEndPrecolored(DistColorError):
    pass


class TooFewColors(DistColorError):
    pass


class Infeasible(DistColorError):
    """The approximation could not repair a gap around the precolored vertices."""


class DemandsUnsupported(DistColorError):
    pass


class ConstraintConflict(DistColorError):
    """Two positional constraints fix the same position to different letters."""


# oracle_cmpl reports the same condition under this name
InconsistentConstraints = ConstraintConflict


class PositionOutOfRange(DistColorError):
    pass


class NotNormalized(DistColorError):
    pass


class NotNonAlternating(DistColorError):
    pass


class InvalidRepresentation(DistColorError, ValueError):
    pass


class ParseError(DistColorError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SemanticError(DistColorError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
