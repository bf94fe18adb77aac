"""Exception types shared across the package."""
from __future__ import annotations


class DirclustError(Exception):
    """Base class for all package errors."""


class DataFormatError(DirclustError):
    """A file or in-memory artifact violates its documented format or contract."""


class CoverageError(DataFormatError):
    """An artifact does not cover exactly the wordlist it was built for."""


class TransportError(DirclustError):
    """A probe could not be delivered after retries; the run is aborted.

    Carries the partial run log collected up to the failing probe so callers
    can persist it before exiting.
    """

    def __init__(self, message: str, partial_log=None):
        super().__init__(message)
        self.partial_log = partial_log
