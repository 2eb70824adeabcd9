"""Exception types shared across the package."""


class DomainError(ArithmeticError):
    """Invalid coefficient-domain operation (e.g. inverting zero)."""


class NonUnitError(DomainError):
    """Integer inversion or division by a non-unit.

    The integer reduction relies on this never firing: pivots are checked
    for unit magnitude before any division is attempted.
    """


class FiltrationError(ValueError):
    """Structurally invalid filtration (dangling facet, bad dimension, ...).

    ``cell`` is the 1-based index of the offending cell when known, so
    parsers can map it back to an input line.
    """

    def __init__(self, message: str, cell: int | None = None):
        super().__init__(message)
        self.cell = cell


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InfiniteLifetimeError(ValueError):
    """A lifetime functional was applied to a diagram with an infinite pair."""
