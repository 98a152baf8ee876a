"""Shared exception base so callers (and the CLI) can catch engine errors in one place."""


class CounselGraphError(Exception):
    """Base class for all errors raised by this package."""
