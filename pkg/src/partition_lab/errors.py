"""Exception types shared across the lab."""


class PartitionLabError(Exception):
    pass


class MissingPair(PartitionLabError, ValueError):
    pass


class DuplicatePair(PartitionLabError, ValueError):
    pass


class SelfPair(PartitionLabError, ValueError):
    pass


class OutOfRange(PartitionLabError, ValueError):
    pass


class PaletteTooLarge(PartitionLabError, ValueError):
    pass


class CapExceeded(PartitionLabError, ValueError):
    pass


class EqualBranches(PartitionLabError, ValueError):
    pass


class LengthMismatch(PartitionLabError, ValueError):
    pass


class BadColors(PartitionLabError, ValueError):
    pass


class AlreadyPresent(PartitionLabError, ValueError):
    pass


class NoRoom(PartitionLabError, ValueError):
    pass


class BadH(PartitionLabError, ValueError):
    pass


class SearchTooLarge(PartitionLabError, ValueError):
    pass


class Infeasible(PartitionLabError, ValueError):
    pass


class BadLadder(PartitionLabError, ValueError):
    pass


class NotBelow(PartitionLabError, ValueError):
    pass


class ConfigInvalid(PartitionLabError, ValueError):
    pass


class ValidityLost(PartitionLabError):
    """A construction produced a condition that fails its path bound.

    ``verdict`` carries the failing witness so callers can report it.
    """

    def __init__(self, message, verdict=None, candidate=None):
        super().__init__(message)
        self.verdict = verdict
        self.candidate = candidate
