"""Exception types shared across the package.

Every failure mode raised by this package derives from KratzerError so
callers (the CLI in particular) can separate physics/domain failures from
genuine bugs.
"""


class KratzerError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KratzerError):
    """An argument is outside the mathematical or physical domain."""


class ConvergenceError(KratzerError):
    """An iterative computation failed to converge within its budget."""


class SelectionRuleError(DomainError):
    """A requested transition violates the dipole selection rules."""


class ConfigurationError(KratzerError):
    """Invalid configuration: bad molecule file, inconsistent grid, ..."""


class ResolutionError(KratzerError):
    """A root or eigenvalue search could not resolve all requested values."""


class NotBoundError(KratzerError):
    """The requested state lies above the dissociation threshold."""
