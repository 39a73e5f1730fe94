"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`RevivalLabError`, so callers (and the CLI) can map failure classes
to exit codes without catching unrelated exceptions.
"""


class RevivalLabError(Exception):
    """Base class for all library errors."""


class ParameterError(RevivalLabError, ValueError):
    """Invalid or inconsistent input parameters."""


class UnderTruncated(RevivalLabError):
    """Significant amplitude would live (or already lives) outside the
    truncated Fock space."""


class SingularSqueeze(RevivalLabError, ZeroDivisionError):
    """A Hermite-expansion path was called with zero squeezing."""


class DegenerateState(RevivalLabError):
    """The variance quotient is undefined because the mean photon number is 0."""


class OptimizerError(RevivalLabError):
    """Base class for failures of the squeezing optimizer."""


class NegativeRadicand(OptimizerError):
    """The square-root argument of the optimal-amplitude formula is negative."""


class NoInteriorMinimum(OptimizerError):
    """A bracketed minimization ended on the bracket edge."""


class BracketFailure(OptimizerError):
    """Root bracket shows no sign change (or the function is not monotone)."""


class NoRevivalInWindow(RevivalLabError):
    """A probability trace shows no collapse followed by a revival."""
