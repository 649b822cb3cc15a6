"""Exception types shared across the package."""

from __future__ import annotations


class BrieskornError(Exception):
    """Base class for all errors raised by this package."""


class InvalidExponent(BrieskornError):
    """An exponent list is malformed (fewer than three entries, or some entry < 2)."""


class NotHyperbolic(BrieskornError):
    """The exponents fail the hyperbolicity inequality sum(1/a_j) < n - 2.

    The exact rational gap (n - 2) - sum(1/a_j) is attached as ``gap``;
    it is <= 0 exactly when the input is rejected.
    """

    def __init__(self, message, gap):
        super().__init__(message)
        self.gap = gap


class DegenerateInput(BrieskornError):
    """A Moebius denominator collapsed; the matrix or point is not genuine."""


class RelationFailure(BrieskornError):
    """A group relation residual exceeded its tolerance.

    The full relation report is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NondegeneracyFailure(BrieskornError):
    """The linearized return map is too close to a full rotation to grade.

    The partially computed result (monodromy, rotation angle) is attached
    as ``result`` so callers can still inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class InconsistentComplex(BrieskornError):
    """Consecutive differentials do not compose to zero."""


class IncompleteWindow(BrieskornError):
    """Too few fiber classes were requested to cover the grading window."""
