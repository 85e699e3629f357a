"""Exception hierarchy shared by all claimcounts modules."""


class ClaimCountsError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(ClaimCountsError, ValueError):
    """A distribution parameter is outside its valid domain."""


class SupportError(ClaimCountsError, ValueError):
    """An observation lies outside the support of the distribution."""


class DegenerateSampleError(ClaimCountsError, ValueError):
    """The sample carries no usable information (e.g. all values identical)."""


class UnderdispersionError(ClaimCountsError, ValueError):
    """Sample variance does not exceed the mean; the negative binomial MLE
    has no interior solution (Poisson boundary, r unbounded)."""


class InsufficientDataError(ClaimCountsError, ValueError):
    """Fewer observations than the statistic requires."""


class NoRootError(ClaimCountsError, RuntimeError):
    """A bracketed root solve has no root in the attainable range."""


class NumericError(ClaimCountsError, RuntimeError):
    """An iterative numeric procedure failed to converge."""


class InfeasibleError(ClaimCountsError, RuntimeError):
    """The likelihood is degenerate everywhere the optimizer can reach."""


class InsufficientReplicatesError(ClaimCountsError, RuntimeError):
    """Too few bootstrap replicates succeeded to form a standard deviation."""


class IncomparableModelsError(ClaimCountsError, ValueError):
    """Model scores computed on different sample sizes cannot be compared."""


class ParseError(ClaimCountsError, ValueError):
    """Malformed input data; message carries the row/column location."""


class UnknownGroupError(ClaimCountsError, KeyError):
    """A requested group label is not present in the table."""

    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0] if self.args else ""
