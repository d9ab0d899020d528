"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class HypothesisError(DomainError):
    """A bound was requested whose stated hypotheses do not hold.

    ``condition`` names the failed hypothesis so callers can report it.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        msg = f"hypothesis violated: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UndecidedError(ArithmeticError):
    """A guarded comparison stayed undecided at the maximum precision."""

    def __init__(self, message: str, boundary=None):
        self.boundary = boundary
        super().__init__(message)
