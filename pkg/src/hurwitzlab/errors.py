"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes: domain errors -> 1, resource limits -> 2,
internal consistency failures -> 3.
"""


class HurwitzlabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HurwitzlabError):
    """The query or input lies outside an operation's domain."""


class ResourceLimitError(HurwitzlabError):
    """A configured computation budget was exceeded."""


class ConsistencyError(HurwitzlabError):
    """An internal cross-check failed.  Always indicates a bug, never bad input."""


class MissingBracketError(DomainError):
    """A bracket required for an evaluation is absent from the table."""

    def __init__(self, bracket):
        super().__init__(f"missing Hodge bracket {bracket}")
        self.bracket = bracket
