"""Exception hierarchy shared by every module of the package."""


class LsapeError(Exception):
    """Base class for all errors raised by :mod:`lsape`."""


class InvalidInstanceError(LsapeError, ValueError):
    """The edit cost matrix violates its structural or value constraints."""


class InvalidAssignmentError(LsapeError, ValueError):
    """An assignment (vector pair, binary matrix or permutation) is malformed."""


class SizeLimitError(LsapeError, ValueError):
    """An exhaustive operation was asked to work on a too large instance."""


class InvariantViolation(LsapeError, RuntimeError):
    """An internal algorithmic invariant was broken."""


class ForbiddenCellError(InvariantViolation):
    """A squared-LSAP optimum used a cell priced at omega."""
