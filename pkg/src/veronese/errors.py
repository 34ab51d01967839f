"""Exception hierarchy shared by the algebra, geometry and reduction code."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NotAUnitError(DomainError):
    """A jet with vanishing constant term was inverted."""


class NotQRegularError(DomainError):
    """The osculating space of the germ is not of maximal dimension."""


class InconsistencyError(DomainError):
    """A germ does not satisfy the truncation profile it was declared with."""


class InsufficientOrderError(DomainError):
    """A jet is truncated too early for the requested computation."""


class CurveNotInChartError(DomainError):
    """The curve does not pass through the affine chart at t = 0."""


class BadTangentError(DomainError):
    """The curve is singular at the base point in its first coordinate."""


class HypothesisNotMetError(DomainError):
    """A curve is not a graph x_j = x_1^j + O(x_1^(q+3)) over its first coordinate."""
