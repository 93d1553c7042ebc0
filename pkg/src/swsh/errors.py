"""Exception types shared across the package.

Everything derives from ValueError so callers that only care about "bad
input" can catch one base class, while the CLI maps specific types to
specific exit codes.
"""


class InvalidMode(ValueError):
    """(s, j, m) violates j >= |s|, |m| <= j, or the configured j cap."""


class DomainError(ValueError):
    """Evaluation point outside the open interval theta in (0, pi)."""


class UnsupportedOrder(ValueError):
    """Derivative order other than 1 or 2."""


class BandLimitExceeded(ValueError):
    """Mode or coefficient content above the grid's band limit."""


class GridMismatch(ValueError):
    """Two grid functions live on different grids."""


class SpinWeightMismatch(ValueError):
    """Spin weights that were required to agree do not."""


class InsufficientNodes(ValueError):
    """Fewer grid rings than an extrapolation needs."""


class UnsupportedHelicity(ValueError):
    """Embedded sections exist only for |h| in {1, 2}."""


class NegativeSpin(ValueError):
    """Multiplet labels must be nonnegative integers."""


class SearchBudgetExceeded(RuntimeError):
    """Factor search branched more times than the configured limit."""
