"""Exception types shared across the package."""


class KnotGameError(Exception):
    """Base class for all package-specific errors."""


class ParseError(KnotGameError):
    """Position text does not conform to the bracket grammar."""


class NotAKnot(KnotGameError):
    """The diagram closes to a two-component link, not a knot."""


class NotAShadow(KnotGameError):
    """Operation requires a diagram with no resolved crossings."""


class PatternMismatch(KnotGameError):
    """A rewrite rule's left-hand side does not match at the given site."""


class InternalNonConvergence(KnotGameError):
    """Shadow normalization reached an unexpected terminal.  Always a bug."""


class IllegalOutcomePair(KnotGameError):
    """A normalized outcome pair fell outside the nine legal cells.  Always a bug."""


class NotYourTurn(KnotGameError):
    """A move was submitted by the side that is not to move."""


class IllegalMove(KnotGameError):
    """The referenced crossing does not exist or is already resolved."""


class GameOver(KnotGameError):
    """The session has finished; no further moves are accepted."""


class PositionTooLarge(KnotGameError):
    """The position exceeds the configured crossing cap."""


class BudgetExceeded(KnotGameError):
    """An oracle cross-check was asked to exceed its crossing budget."""
