"""Exception types raised by the hdgp toolkit."""


class HdgpError(Exception):
    """Base class for all toolkit errors."""


class InputError(HdgpError, ValueError):
    """An argument or input file violates a documented precondition."""


class ManifoldError(InputError):
    """A point is off the 'Loid, outside the Poincare ball, or too close to it."""


class NoDataError(InputError):
    """The problem carries no metric and no ordinal information."""


class NotLorentzianError(InputError):
    """A matrix lacks the one-negative-eigenvalue structure of an H-Gramian."""


class SolverError(HdgpError):
    """A numeric routine failed (for example the eigensolver did not converge)."""
