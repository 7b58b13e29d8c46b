"""Exception types shared across the package."""
from __future__ import annotations


class ClasslabError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ClasslabError):
    """Malformed textual input: cycles, group specs, class expressions, catalog files."""


class DegreeMismatch(ClasslabError):
    """Permutations or groups of different degrees were combined."""


class InvalidInput(ClasslabError):
    """A precondition on an operation's arguments does not hold."""


class CapExceeded(ClasslabError):
    """A configured cap (enumeration, isomorphism, coordinates, depth) was hit."""


class SubgroupLimitExceeded(CapExceeded):
    """Subgroup enumeration exceeded the configured limit."""


class FalsificationAlarm(ClasslabError):
    """A check backed by a proved statement failed; carries a witness payload.

    These alarms indicate an implementation bug (or a genuinely falsifying
    instance) and must never be swallowed.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness if witness is not None else {}
