"""Exception hierarchy shared across the package.

InputError subclasses map to CLI exit code 1, endpoint budget failures to 2,
everything else to 3.
"""

from __future__ import annotations


class RelcheckError(Exception):
    """Base class for every error raised by this package."""


class InputError(RelcheckError):
    """Problem with user-supplied input: lexicon, edge file, config, parameters."""


class ParseError(InputError):
    pass


class DuplicateTerm(InputError):
    pass


class AliasCollision(InputError):
    pass


class UnknownTerm(InputError):
    """A term reference that does not resolve to any lexicon entry.

    ``failures`` carries every offending (term, row) pair so a bad edge file
    is reported in one pass instead of dying on the first row.
    """

    def __init__(self, failures: list[tuple[str, int | None]]):
        self.failures = failures
        detail = "; ".join(
            f"{term!r}" + (f" (row {row})" if row is not None else "")
            for term, row in failures
        )
        super().__init__(f"unknown term(s): {detail}")


class UnknownEndpoint(InputError):
    pass


class EmptyTerm(InputError):
    pass


class InvalidParam(InputError):
    pass


class NodeUniverseMismatch(InputError):
    pass


class EmptyReference(InputError):
    pass


class CacheCorruption(RelcheckError):
    def __init__(self, path, detail: str = ""):
        self.path = path
        super().__init__(f"corrupt cache file {path}" + (f": {detail}" if detail else ""))


class EndpointError(RelcheckError):
    """A single term's request failed after the retry budget was spent."""

    def __init__(self, status: int | None, term: str, detail: str = ""):
        self.status = status
        self.term = term
        super().__init__(
            f"endpoint failure for term {term!r}"
            + (f" (status {status})" if status is not None else "")
            + (f": {detail}" if detail else "")
        )


class EndpointBudgetExceeded(RelcheckError):
    """Raised by the CLI when a harvest run leaves one or more terms unanswered."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(f"{len(self.failures)} term(s) failed after retries")


class PartitionDomainMismatch(RelcheckError):
    pass


class LengthMismatch(RelcheckError):
    pass
