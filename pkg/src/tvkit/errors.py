"""Exception types shared across the toolkit."""


class TvkitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(TvkitError, ValueError):
    """A parameter or input is outside its documented domain."""


class CommonJumpError(TvkitError):
    """Integrand and integrator jump at the same time point."""


class ConvergenceError(TvkitError):
    """An iterative refinement failed to reach its tolerance."""


class SeriesError(TvkitError):
    """A series evaluation diverged or its tail could not be certified."""
