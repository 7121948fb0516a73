"""Semantic exception hierarchy.

Every error raised on purpose by this package derives from
:class:`CovBoundsError`, so callers (and the CLI) can distinguish bad input
from genuine bugs with a single ``except`` clause.
"""


class CovBoundsError(Exception):
    """Base class for all errors raised by covbounds."""


class DimensionMismatchError(CovBoundsError, ValueError):
    """Vector/matrix shapes do not agree with the declared dimensions."""


class NonSymmetricError(CovBoundsError, ValueError):
    """A covariance matrix is asymmetric beyond tolerance."""


class NotPsdError(CovBoundsError, ValueError):
    """A covariance matrix has an eigenvalue below the PSD tolerance."""


class DuplicateNameError(CovBoundsError, ValueError):
    """Variable or regime names are not unique."""


class NonFiniteError(CovBoundsError, ValueError):
    """An input contains NaN or infinity."""


class IndexOutOfRangeError(CovBoundsError, IndexError):
    """A variable index is outside [0, n)."""


class EmptyInputError(CovBoundsError, ValueError):
    """An operation received zero scenarios/entries."""


class NegativeVarianceError(CovBoundsError, ValueError):
    """A scenario second moment is below the square of its mean."""


class NotOnSimplexError(CovBoundsError, ValueError):
    """Mixture weights are negative or do not sum to one."""


class MeansNotCertainError(CovBoundsError, ValueError):
    """The mean-certain shortcut was called with non-constant means."""


class NonPositiveVarianceError(CovBoundsError, ValueError):
    """Correlation bounds need strictly positive variances."""


class BadBoxError(CovBoundsError, ValueError):
    """A grid box is inverted or does not cover the mean intervals."""


class TooManyScenariosError(CovBoundsError, ValueError):
    """A simplex lattice would be too large to enumerate."""


class TooFewSamplesError(CovBoundsError, ValueError):
    """A regime has fewer than two observations."""


class RaggedRowsError(CovBoundsError, ValueError):
    """Sample rows disagree on the number of variables."""


class SchemaError(CovBoundsError, ValueError):
    """A JSON/CSV document does not match the declared schema."""
