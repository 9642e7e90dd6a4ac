"""Exception types shared across the verification engine."""


class CubicThueError(Exception):
    pass


class IndeterminateSignError(CubicThueError):
    """An enclosure touches a forbidden region (zero for division/log,
    or a sign query that the current precision cannot decide).  Callers
    are expected to escalate precision and retry."""


class PrecisionInsufficientError(CubicThueError):
    """The working precision is too coarse to certify the requested
    result (root separation, continued-fraction agreement, enclosure
    width targets)."""


class VerificationFailedError(CubicThueError):
    """A certified check that was expected to hold did not."""


class HeightBoundViolatedError(VerificationFailedError):
    """A displayed height inequality failed its numerical check."""
