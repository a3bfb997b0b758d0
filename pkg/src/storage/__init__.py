"""Storage and persistence."""

from .db import ResultStore

__all__ = ["ResultStore"]
