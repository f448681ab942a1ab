"""Custom exceptions for nahmscan."""


class NahmscanError(Exception):
    """Base exception for all nahmscan errors."""

    def __init__(self, message: str, details: str | None = None):
        """Initialize the error.

        Args:
            message: Error message
            details: Optional additional details (diagnostics, offending values)

        """
        self.message = message
        self.details = details
        super().__init__(self.message)

    def __str__(self) -> str:
        """Render the message with details when present."""
        if self.details:
            return f"{self.message} ({self.details})"
        return self.message


class ConfigurationError(NahmscanError):
    """Raised when there are configuration-related issues."""

    pass


class DataLoadError(NahmscanError):
    """Raised when corpus or datum files cannot be loaded or parsed."""

    pass


class ValidationError(NahmscanError):
    """Raised when input validation fails."""

    pass


class DomainError(ValidationError):
    """Raised when a special function is called outside its domain."""

    pass


class ComputationError(NahmscanError):
    """Raised when a numerical computation cannot produce a result."""

    pass


class NoSolutionError(ComputationError):
    """Raised when the Q-system has no root in the open unit cube."""

    pass


class NotUniqueError(ComputationError):
    """Raised when the Q-system has more than one root in the open unit cube."""

    pass


class DegenerateError(ComputationError):
    """Raised when the combined leading coefficient of a multi-term sum vanishes."""

    pass
