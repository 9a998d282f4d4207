"""Exception types raised across the package.

Everything derives from LiedimError so callers (notably the CLI) can
distinguish domain errors from genuine bugs.
"""


class LiedimError(Exception):
    pass


class DimensionMismatch(LiedimError):
    """Vector or module lengths do not agree."""


class NotContained(LiedimError):
    """Quotient requested of modules without the required containment."""


class MalformedExpr(LiedimError):
    """Lie expression tree is structurally invalid for the requested ring."""


class NotLieElement(LiedimError):
    """Polynomial is not an integer combination of Lyndon bracketings."""


class TruncationMismatch(LiedimError):
    """Operands carry incompatible truncation degrees."""


class ParseError(LiedimError):
    """Presentation text does not conform to the grammar."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class UnknownGenerator(ParseError):
    pass


class EmptyBracket(ParseError):
    pass


class OutOfRange(LiedimError):
    """Index parameter outside the range supported by the context."""


class ContextMismatch(LiedimError):
    """Operands belong to different truncated contexts."""


class ClassTooSmall(LiedimError):
    """Nilpotency class bound too small for the requested series term."""


class NotPreabelian(LiedimError):
    """Operation requires a presentation in pre-abelian form."""


class BadParameters(LiedimError):
    """Counterexample family parameters outside the defined range."""
