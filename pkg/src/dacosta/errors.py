"""Exception types shared across the package."""


class DacostaError(Exception):
    pass


class ParseError(DacostaError):
    """Formula syntax error; carries the 0-based position in the input text."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResourceLimitError(DacostaError):
    """A row or node cap was exceeded before the procedure finished."""


class ExtensionError(DacostaError):
    """A partial valuation cannot be extended: precondition violated.

    `formula` names the offending formula.
    """

    def __init__(self, message, formula=None):
        super().__init__(message)
        self.formula = formula


class DomainError(DacostaError):
    """A bivaluation domain is missing a formula required by a conversion."""

    def __init__(self, message, formula=None):
        super().__init__(message)
        self.formula = formula
