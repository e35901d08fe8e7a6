"""Exception hierarchy shared by every boolq module."""


class BoolqError(Exception):
    """Base class for all toolkit errors."""


class ParseError(BoolqError, ValueError):
    """Malformed truth-table, polynomial or point text."""


class InvalidParams(BoolqError, ValueError):
    """Parameters outside a family's or operation's valid range."""


class CapExceeded(BoolqError):
    """Input size exceeds the configured exact-computation cap."""

    def __init__(self, measure, n, cap):
        super().__init__(f"{measure}: n={n} exceeds cap {cap}")
        self.measure = measure
        self.n = n
        self.cap = cap


class BudgetExceeded(BoolqError):
    """Work or node budget exhausted; carries whatever bounds are known."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class NonBooleanPolynomial(BoolqError, ValueError):
    """A polynomial takes a value outside {0, 1} at some Boolean point."""

    def __init__(self, point, value):
        if point is None:
            super().__init__(f"evaluator ended on the non-Boolean constant {value}")
        else:
            super().__init__(f"polynomial evaluates to {value} at point index {point}")
        self.point = point
        self.value = value


class WitnessNotFound(BoolqError, AssertionError):
    """No sensitive block inside a maxonomial was found. Always an implementation defect."""


class RepeatedQuery(BoolqError):
    """An oracle was asked for the same variable twice in one run."""


class UnknownMeasure(BoolqError, LookupError):
    """No closed form is known for the requested family measure."""
