"""Exception and warning types shared across the package."""


class IrsHurstError(Exception):
    """Base class for errors raised by this package."""


class MomentConditionViolated(IrsHurstError, ValueError):
    """A filter fails the vanishing-moment conditions.

    Attributes
    ----------
    moment_index : int
        The moment i whose condition failed.
    problem : str
        ``"nonzero"`` when the moment had to vanish but did not,
        ``"zero"`` when the moment had to be nonzero but vanished.
    """

    def __init__(self, moment_index, problem, value):
        self.moment_index = moment_index
        self.problem = problem
        self.value = value
        super().__init__(
            f"moment {moment_index} is {problem} (value {value!r}); "
            f"expected {'zero' if problem == 'nonzero' else 'nonzero'}"
        )


class EmbeddingNotPSD(IrsHurstError):
    """The circulant embedding produced a significantly negative eigenvalue."""


class NotPositiveDefinite(IrsHurstError):
    """A covariance matrix failed its Cholesky factorization."""


class RangeTooWide(IrsHurstError, ValueError):
    """A Hurst function leaves the supported band (0.01, 0.99)."""


class PathTooShort(IrsHurstError, ValueError):
    """A sample path has too few points for the requested operation."""


class TooFewIncrements(IrsHurstError, ValueError):
    """An increment series is too short to form ratio pairs."""


class WindowTooSmall(IrsHurstError, ValueError):
    """A localization window holds fewer pairs than the supported minimum."""

    def __init__(self, effective_size, minimum=8):
        self.effective_size = effective_size
        self.minimum = minimum
        super().__init__(
            f"window holds {effective_size} ratio pairs; at least {minimum} required"
        )


class DomainError(IrsHurstError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class UnsupportedFilter(IrsHurstError, ValueError):
    """The requested closed form or inversion is not available for this filter."""


class DegenerateDenominator(IrsHurstError, ZeroDivisionError):
    """The lag-1 correlation denominator vanishes for this filter."""


class NonPositiveVariation(IrsHurstError, ValueError):
    """A mean squared variation is zero, so the quadratic-variation ratio is undefined."""


class CLTConditionViolated(UserWarning):
    """The CLT hypotheses do not hold (order-1 filter with H >= 3/4); results are heuristic."""


class SaturatedEstimate(UserWarning):
    """A statistic fell outside the attainable band of the limit function; the estimate was clamped."""


class LocalizationRateWarning(UserWarning):
    """gamma * (1 + eta) <= 1, so the localized CLT is not guaranteed to apply."""
