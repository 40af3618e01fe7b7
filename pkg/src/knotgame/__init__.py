"""Solver, classifier, and play engine for the knotting-unknotting game."""

from .errors import (
    BudgetExceeded,
    GameOver,
    IllegalMove,
    IllegalOutcomePair,
    InternalNonConvergence,
    KnotGameError,
    NotAKnot,
    NotAShadow,
    NotYourTurn,
    ParseError,
    PatternMismatch,
    PositionTooLarge,
)
from .rewrite import (
    RewriteRule,
    RuleTag,
    ShadowClass,
    ShadowKind,
    apply_rule,
    classify_shadow,
    is_odd_even,
    reduce_to_unknot,
)
from .solver import (
    NormalizedOutcome,
    OutcomeClass,
    Player,
    TranspositionTable,
    XYValue,
    is_zero_game,
    normalized_outcome,
    outcome,
    projections,
    wins_moving_first,
    xy,
)
from .sums import ClosedFormOutcome, OutcomeRationale, outcome_closed_form, outcome_oracle_check
from .tangle import (
    Fraction,
    MoveDescriptor,
    RationalPseudodiagram,
    STAR,
    SumPosition,
    TwistRegion,
    evaluate_fraction,
    format_diagram,
    format_position,
    parse_diagram,
    parse_position,
)

__version__ = "0.1.0"
