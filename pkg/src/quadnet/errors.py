"""
Exception types shared by the compute modules and the CLI.
"""
from __future__ import annotations


class QuadnetError(Exception):
    """Base class for errors raised by quadnet."""


class ConfigError(QuadnetError, ValueError):
    """
    Invalid job configuration or input file.

    :param field: Offending field, as a JSON pointer ("adjacency/2") or a flag name ("--window")
    :type field: str
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class PreconditionError(QuadnetError, ValueError):
    """An operation was called outside its domain (e.g. non-dominant network for the escape bound)."""


class CapExceededError(PreconditionError):
    """Exhaustive enumeration would exceed the configured cap."""


class SpectralError(QuadnetError):
    """Eigenvalue computation failed; the message echoes the matrix."""
