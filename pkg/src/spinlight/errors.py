"""Exception hierarchy.

Every error raised on purpose by the package derives from ``SpinlightError``;
the subclasses map onto the CLI exit codes (2 config, 3 physics domain,
4 numerical failure).
"""


class SpinlightError(Exception):
    exit_code = 1


class ConfigError(SpinlightError, ValueError):
    exit_code = 2


class InvalidInputError(SpinlightError, ValueError):
    """Arguments violate a type invariant (non-positive lapse, bad helicity, ...)."""

    exit_code = 3


class DomainError(SpinlightError, ValueError):
    """Evaluation point lies outside the region where a formula is valid."""

    exit_code = 3


class OutOfRegionError(DomainError):
    """Point at or beyond the light cylinder of a rotating frame."""


class InteriorPointError(DomainError):
    """Field point inside the gravitating body."""


class WeakFieldError(DomainError):
    pass


class SuperluminalError(DomainError):
    pass


class UnsupportedMetricError(DomainError):
    pass


class SingularMediumError(DomainError):
    pass


class InvalidGridError(DomainError):
    pass


class NumericalError(SpinlightError, ArithmeticError):
    exit_code = 4


class WindowError(NumericalError):
    """Residual minimizer landed on the edge of its search window."""


class SamplingError(NumericalError):
    pass
