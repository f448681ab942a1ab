"""Utilities package for nahmscan."""

from .exceptions import (
    ComputationError,
    ConfigurationError,
    DataLoadError,
    DegenerateError,
    DomainError,
    NahmscanError,
    NotUniqueError,
    NoSolutionError,
    ValidationError,
)
from .logging import get_logger, setup_logging

__all__ = [
    "setup_logging",
    "get_logger",
    "NahmscanError",
    "ConfigurationError",
    "DataLoadError",
    "ValidationError",
    "DomainError",
    "ComputationError",
    "NoSolutionError",
    "NotUniqueError",
    "DegenerateError",
]
