"""Exception hierarchy shared across the package."""


class SdrError(Exception):
    """Base class for every error raised by sdrkit."""


class InvalidDirectionError(SdrError, ValueError):
    pass


class InvalidCurveError(SdrError, ValueError):
    pass


class UnknownCurveError(SdrError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown curve"


class DegenerateOverlapError(SdrError, ValueError):
    """Two curves share a sub-arc of positive length."""


class PreconditionError(SdrError, ValueError):
    """Input violates the hypotheses an algorithm relies on."""


class InternalInvariantError(SdrError, RuntimeError):
    """A structural fact guaranteed by the underlying argument failed.

    Carries the offending state so the failure can be reproduced.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class BudgetExceededError(SdrError, RuntimeError):
    def __init__(self, budget):
        super().__init__(f"search node budget of {budget} exceeded")
        self.budget = budget


class InstanceValidationError(SdrError, ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class SchemaError(SdrError, ValueError):
    """Instance document does not match the JSON schema."""
