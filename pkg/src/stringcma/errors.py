"""Exception types shared across the package."""


class StringCmaError(Exception):
    """Base class for analysis errors (CLI exit status 1)."""


class PresentationError(StringCmaError, ValueError):
    pass


class ParseError(PresentationError):
    """Malformed DSL input. Carries a 1-based line and column."""

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class NonAdmissibleError(StringCmaError):
    """Path enumeration ran past the length cap; the ideal is not admissible."""


class NotMonomialError(StringCmaError):
    pass


class NotStringAlgebraError(StringCmaError):
    pass


class NotGentleError(StringCmaError):
    pass


class OverlapError(StringCmaError):
    def __init__(self, message, alignments=()):
        self.alignments = tuple(alignments)
        super().__init__(message)


class WordError(StringCmaError):
    pass


class BandError(WordError):
    pass


class ZeroPathError(StringCmaError):
    pass


class GConditionError(StringCmaError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TruncationError(StringCmaError):
    """The degree-bounded quotient computation did not close."""


class ShapeError(StringCmaError):
    pass
