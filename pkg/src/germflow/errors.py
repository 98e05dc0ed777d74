"""Exception hierarchy shared by all germflow modules."""


class GermflowError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GermflowError):
    """Input text does not match the branch / polynomial grammar."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line} col {col}: {message}"
        super().__init__(message)


class SeriesError(GermflowError):
    """Structurally invalid series operation (e.g. quotient not a power series)."""


class PrecisionError(GermflowError):
    """A decision would read a coefficient beyond the known truncation order."""


class PuiseuxError(GermflowError):
    """Newton-Puiseux expansion cannot proceed."""


class IrrationalRootError(PuiseuxError):
    """An edge equation has no rational root; out of engine scope."""


class ReducibleError(PuiseuxError):
    """The input polynomial is detectably reducible along the expansion."""


class ResolutionError(GermflowError):
    """Blowup engine failure (max steps exceeded, degenerate input)."""


class LiftError(GermflowError):
    """A point cannot be lifted along a chart path (ill-conditioned or origin)."""


class PlanError(GermflowError):
    """Isotopy plan construction failure."""


class NotEquisingularError(PlanError):
    """Plan requested for a pair of branches that are not equisingular."""


class DegenerateSlopeError(PlanError):
    """A tangent slope is 0/infinity where the construction forbids it."""


class NumericError(GermflowError):
    """Non-finite value produced during numeric integration."""
