"""Exception hierarchy.

Every error raised on purpose by the library derives from ``DNGameError``.
The CLI maps ``ParseError`` to exit code 2, ``IncompleteCoverageError`` to
exit code 4 and every other ``DomainError`` to exit code 3.
"""

from __future__ import annotations


class DNGameError(Exception):
    pass


class ParseError(DNGameError, ValueError):
    """Malformed input document. ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DomainError(DNGameError, ValueError):
    pass


class InvalidFuzzyNumberError(DomainError):
    pass


class ZeroAreaError(DomainError):
    pass


class EmptyInputError(DomainError):
    pass


class LengthMismatchError(DomainError):
    pass


class FrameMismatchError(DomainError):
    pass


class TotalConflictError(DomainError):
    pass


class TotalExclusiveConflictError(DomainError):
    pass


class MassOverflowError(DomainError):
    pass


class NegativeMassError(DomainError):
    pass


class EmptyFocalError(DomainError):
    pass


class WeightSumInvalidError(DomainError):
    pass


class NoInformationError(DomainError):
    pass


class UnknownLabelError(DomainError):
    pass


class EmptyVotesError(DomainError):
    pass


class DegenerateWeightError(DomainError):
    pass


class IndexOutOfRangeError(DomainError, IndexError):
    pass


class IncompleteCoverageError(DomainError):
    def __init__(self, missing):
        self.missing = list(missing)
        names = ", ".join(f"{player}|{opp}" for player, opp in self.missing)
        super().__init__(f"missing evaluation cases: {names}")
