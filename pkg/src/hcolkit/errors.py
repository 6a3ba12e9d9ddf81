"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI: bad input / usage -> 1,
CeilingError -> 2, InvariantViolation -> 3.
"""


class HcolError(Exception):
    """Base class for toolkit errors."""


class CeilingError(HcolError):
    """A configured feasibility ceiling would be exceeded.

    Raised *before* starting a search that cannot finish at desk scale
    (exponential subset enumeration, oversized oracle instances, field
    degrees out of range).  Never raised mid-way through a computation.
    """


class InvariantViolation(HcolError):
    """An internal invariant that should hold by construction was violated.

    Seeing this exception means a bug, not a bad input.
    """
