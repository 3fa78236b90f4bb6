"""Exception types shared across the package."""


class StatnetError(Exception):
    """Base class for all domain errors."""


class ParseError(StatnetError):
    """Network DSL error, annotated with the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateStateError(StatnetError):
    """A state collapsed to the zero vector (everything was projected away)."""


class DegenerateDynamicsError(StatnetError):
    """The drive demands mass in a sector the constrained subspace cannot host."""


class UnpreparableNetworkError(StatnetError):
    """No assignment satisfies the gates together with the input pins."""
