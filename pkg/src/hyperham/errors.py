"""Exception hierarchy shared by every hyperham module."""


class HyperhamError(Exception):
    """Base class for all errors raised by hyperham."""


class InvalidQueryError(HyperhamError, ValueError):
    pass


class InvalidInputError(HyperhamError, ValueError):
    pass


class IncompatibleHypergraphsError(HyperhamError, ValueError):
    pass


class InvalidSpecError(HyperhamError, ValueError):
    pass


class InvalidWitnessError(HyperhamError, ValueError):
    pass


class InvalidPatternError(HyperhamError, ValueError):
    pass


class NoCertificateError(HyperhamError):
    pass


class BudgetExceeded(HyperhamError):
    """A search gave up before reaching a definitive answer.

    Carries the number of nodes explored so far so callers can report an
    ``undecided(budget)`` outcome instead of a wrong one.
    """

    def __init__(self, message="search budget exhausted", nodes=0):
        super().__init__(message)
        self.nodes = nodes


class ParseError(HyperhamError, ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateEdgeWarning(UserWarning):
    pass
