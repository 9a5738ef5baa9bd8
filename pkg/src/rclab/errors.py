"""Exception hierarchy shared by every rclab module."""


class RclabError(Exception):
    """Base class for all library errors."""


class InvalidArgument(RclabError, ValueError):
    """An argument is outside the operation's domain."""


class PreconditionError(InvalidArgument):
    """The input is well-formed but violates a kernel precondition."""


class AllEqual(PreconditionError):
    """Every count in a vote table is the same, so no proper argmin exists."""


class InvalidOracle(InvalidArgument):
    """A choice oracle is not total or returned an element outside its argument."""


class KernelInvariantError(RclabError, RuntimeError):
    """An internal invariant of a selection kernel did not hold."""
