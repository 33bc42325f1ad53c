"""Exception hierarchy shared by every module of the package."""


class ArtifactError(Exception):
    """Base class for all errors raised by the package."""


class NotExpandable(ArtifactError):
    """A rational function has no integral expansion in powers of 1/u."""


class IncomparableTails(ArtifactError):
    """Two truncated series agree but nothing is known about their tails."""


class IncompatibleAction(ArtifactError):
    """The requested involution does not fit the quadratic signature."""


class UnsupportedAction(ArtifactError):
    """The requested involution is outside the range of a formula."""


class OutOfRange(ArtifactError):
    """A coefficient was requested outside the proven range of a formula."""

    def __init__(self, message: str, m: int | None = None, bound: int | None = None):
        super().__init__(message)
        self.m = m
        self.bound = bound


class GermSyntaxError(ArtifactError, ValueError):
    """The germ text does not follow the monomial grammar."""


class NotInvariant(ArtifactError):
    """The germ changes under x1 -> -x1."""


class NotATemplate(ArtifactError):
    """The germ is invariant but matches no normal-form template."""

    def __init__(self, message: str, nearest: str | None = None):
        super().__init__(message if nearest is None else f"{message} (nearest template: {nearest})")
        self.nearest = nearest


class NonUnitCoefficient(ArtifactError):
    """A monomial carries a coefficient other than +1 or -1."""


class NoClause(ArtifactError):
    """No encoded classification clause covers a pair."""


class DualPathMismatch(ArtifactError):
    """The computed verdict and the clause-table verdict disagree."""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair
