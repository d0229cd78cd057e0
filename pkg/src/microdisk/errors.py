"""Exception types shared across the package.

Every error a caller may want to handle programmatically gets its own
class; all inherit from :class:`MicrodiskError` so ``except MicrodiskError``
catches any package-originated failure.
"""


class MicrodiskError(Exception):
    """Base class for all package-specific errors."""


class DomainError(MicrodiskError, ValueError):
    """Argument lies outside the supported evaluation domain."""


class SingularityError(DomainError):
    """Evaluation requested at a singular point (e.g. H_m^(1) at z = 0)."""


class GridError(MicrodiskError, ValueError):
    """Field-grid specification is degenerate or inconsistent."""


class ConvergenceError(MicrodiskError, RuntimeError):
    """An iterative solver failed to converge."""


class BranchError(MicrodiskError, RuntimeError):
    """A root was found but does not belong to the requested (m, ell) branch."""


class BoundaryProximityError(MicrodiskError, RuntimeError):
    """A contour passes too close to a root for argument tracking."""


class ZeroWidthError(MicrodiskError, ValueError):
    """A resonance with Im(kR) = 0 has no decay width."""


class NoBarrierError(MicrodiskError, ValueError):
    """m = 0 modes carry no centrifugal barrier."""


class UndersampledBoundaryError(MicrodiskError, ValueError):
    """Too few boundary samples for the requested phase-space transform."""


class NoThresholdError(MicrodiskError, RuntimeError):
    """The swept quantity is monotone; no interior turning point exists."""
