"""Exception hierarchy shared by the planners, builders and the CLI."""


class FdCellError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(FdCellError, ValueError):
    """Array lengths or receiver dimensions do not line up."""


class RegimeError(FdCellError, ValueError):
    """The configuration lies outside the regime an operation is defined for."""


class InfeasibleError(FdCellError):
    """A linear program has an empty feasible region."""


class EnumerationCapError(FdCellError):
    """An exponent set would exceed the configured enumeration cap."""

    def __init__(self, count, cap, what="exponent vectors"):
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} exceeds enumeration cap {cap}")


class FeasibilityError(FdCellError):
    """A beamforming construction has too few free dimensions."""

    def __init__(self, message, measured=None, required=None):
        self.measured = measured
        self.required = required
        super().__init__(message)


class UnresolvableCoefficientError(FdCellError, KeyError):
    """A coefficient id does not exist in the channel realization."""
