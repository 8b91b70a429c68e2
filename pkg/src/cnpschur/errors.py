"""ERRORS.

This module defines the exceptions raised by CNPSchur.

Every exception derives from :class:`CnpSchurError` and from the builtin
exception closest to its meaning, so callers may catch either.

:Author: CNPSchur developers

"""


class CnpSchurError(Exception):
    """CNPSchur Error.

    Base class for all CNPSchur exceptions.

    """

    pass


class DimensionMismatch(CnpSchurError, ValueError):
    """Dimension Mismatch.

    Raised when points, vectors or matrices have incompatible dimensions.

    """

    pass


class ShapeMismatch(DimensionMismatch):
    """Shape Mismatch.

    Raised when expression shapes are inconsistent.

    """

    pass


class NonHermitianInput(CnpSchurError, ValueError):
    """Non-Hermitian Input."""

    pass


class NotPositiveDefinite(CnpSchurError, ValueError):
    """Not Positive Definite."""

    pass


class ZeroVector(CnpSchurError, ValueError):
    """Zero Vector."""

    pass


class EmptySignature(CnpSchurError, ValueError):
    """Empty Signature."""

    pass


class DomainEscape(CnpSchurError, ValueError):
    """Domain Escape.

    Raised when a point is not inside the open unit ball with the required
    margin.

    """

    pass


class EmbeddingEscapesBall(DomainEscape):
    """Embedding Escapes Ball."""

    pass


class DeltaVanishes(CnpSchurError, ValueError):
    """Delta Vanishes."""

    pass


class SingularDenominator(CnpSchurError, ArithmeticError):
    """Singular Denominator.

    Raised when the denominator of a linear fractional transformation is
    numerically singular.

    """

    pass


class NotStrictlySolvable(CnpSchurError, ValueError):
    """Not Strictly Solvable.

    Raised when tangential data violate the strict inequality
    :math:`\\eta^*\\eta < \\xi^*\\xi`.

    """

    pass


class NotSolvable(CnpSchurError, RuntimeError):
    """Not Solvable."""

    pass


class HypothesisViolated(CnpSchurError, ValueError):
    """Hypothesis Violated."""

    pass


class DenominatorVanishes(CnpSchurError, ArithmeticError):
    """Denominator Vanishes."""

    pass


class MalformedDocument(CnpSchurError, ValueError):
    """Malformed Document.

    Raised when a JSON document does not follow the expected schema.

    Parameters
    ----------
    message : str
        Error message
    location : str, optional
        Path of the offending entry inside the document, default is ``'$'``

    """

    def __init__(self, message, location='$'):

        self.location = location
        super().__init__(f'{message} (at {location})')
