from __future__ import annotations


class BraidkitError(Exception):
    """Base class for all errors raised by braidkit."""


class InvalidArgument(BraidkitError, ValueError):
    pass


class PreconditionError(BraidkitError, ValueError):
    pass


class ReflectionUndefined(BraidkitError):
    """A Weyl-groupoid reflection was requested where some m-entry is undefined."""


class ParseError(BraidkitError, ValueError):
    pass


class ResourceOverflow(BraidkitError):
    """A configured search or size budget was exhausted; the answer is undecided."""
