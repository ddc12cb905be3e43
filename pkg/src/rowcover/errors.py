"""Shared exception types."""

from __future__ import annotations

__all__ = ["DomainError"]


class DomainError(ValueError):
    """Raised when an argument is outside a function's mathematical domain.

    Subclasses ValueError so callers that only care about "bad input" can
    catch the builtin, while the CLI and tests can distinguish domain
    failures from genuine bugs.
    """
