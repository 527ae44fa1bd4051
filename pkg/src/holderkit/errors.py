"""Exception hierarchy shared by all holderkit modules."""


class HolderkitError(Exception):
    """Base class for every error raised by holderkit."""


class ShapeError(HolderkitError, ValueError):
    """Array shapes or underlying spaces do not match."""


class DomainError(HolderkitError, ValueError):
    """A parameter lies outside the domain where the operation is defined."""


class MetricError(HolderkitError, ValueError):
    """A distance matrix fails the metric axioms."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class PreconditionError(HolderkitError, ValueError):
    """Input data violates a stated precondition.

    ``pair`` holds the first offending index pair (row-major) when the
    precondition is a pairwise inequality.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NoGoodPointsError(PreconditionError):
    """The level set ``{x : N(f)(x) <= L}`` is empty."""

    code = "NO_GOOD_POINTS"

    def __init__(self, L, min_maximal):
        super().__init__(
            f"{self.code}: no point has maximal function <= L={L!r} "
            f"(smallest value is {min_maximal!r})")
        self.L = L
        self.min_maximal = min_maximal


class FilterError(HolderkitError, ValueError):
    """A band-limited filter is malformed or unsuitable for a request."""


class InputError(HolderkitError):
    """A data file could not be parsed.

    Carries the offending ``path`` and 1-based ``row`` (``None`` when the
    problem is not tied to a row).
    """

    def __init__(self, message, path=None, row=None):
        where = str(path) if path is not None else "<input>"
        if row is not None:
            where += f", row {row}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.row = row
