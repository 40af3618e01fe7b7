"""Perfect-play evaluation of knotting-unknotting positions.

The Unknotter and the Knotter alternately resolve one open crossing; once
every crossing is resolved the Unknotter has won iff every summand closes to
the unknot.  Winner search is plain win/loss minimax with early exit,
memoized in a transposition table keyed on canonical positions (components
sorted, each replaced by the smaller of itself and its reversal).  Winners
under perfect play are unique, so table entries are idempotent and a single
table can be shared freely.
"""

from __future__ import annotations

from bisect import bisect
from enum import Enum
from typing import Iterator, NamedTuple

from .errors import IllegalOutcomePair, NotAKnot
from .tangle import STAR, RationalPseudodiagram, SumPosition, as_sum

Raw = tuple[tuple[tuple[int, int], ...], ...]


class Player(Enum):
    UNKNOTTER = "unknotter"
    KNOTTER = "knotter"

    @property
    def opponent(self) -> "Player":
        return Player.KNOTTER if self is Player.UNKNOTTER else Player.UNKNOTTER


class OutcomeClass(Enum):
    """Who wins under perfect play: a fixed side, or a fixed mover."""

    U = "U"
    K = "K"
    FIRST = "1"
    SECOND = "2"


class NormalizedOutcome(NamedTuple):
    """Outcomes of the even and odd projections of a position."""

    even_outcome: OutcomeClass
    odd_outcome: OutcomeClass


class XYValue(NamedTuple):
    x: int
    y: int


class TranspositionTable:
    """Memo of solved positions.

    Values are [winner when Unknotter moves first, winner when Knotter moves
    first], each 0 for the Unknotter and 1 for the Knotter, filled lazily.
    Entries are only ever written with the unique perfect-play winner, so
    concurrent duplicated work is harmless.
    """

    __slots__ = ("_entries",)

    def __init__(self) -> None:
        self._entries: dict[Raw, list[int | None]] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def clear(self) -> None:
        self._entries.clear()

    def get(self, key: Raw, mover: int) -> int | None:
        entry = self._entries.get(key)
        return entry[mover] if entry is not None else None

    def put(self, key: Raw, mover: int, winner: int) -> None:
        entry = self._entries.setdefault(key, [None, None])
        entry[mover] = winner


_UNK, _KNO = 0, 1
_IDX_OF = {Player.UNKNOTTER: _UNK, Player.KNOTTER: _KNO}
_PLAYER_OF = {_UNK: Player.UNKNOTTER, _KNO: Player.KNOTTER}

DEFAULT_TABLE = TranspositionTable()


_COMP_CANON: dict[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]] = {}


def _canonical(raw: Raw) -> Raw:
    cache = _COMP_CANON
    comps = []
    for comp in raw:
        canon = cache.get(comp)
        if canon is None:
            canon = cache[comp] = cache.setdefault(comp[::-1], min(comp, comp[::-1]))
        comps.append(canon)
    comps.sort()
    return tuple(comps)


def _all_unknots(raw: Raw) -> bool:
    for comp in raw:
        num, den = 0, 1
        for a, _ in comp:
            num, den = den, num + den * a
        if den != 1 and den != -1:
            return False
    return True


# comp -> its canonical successor components, deduplicated, order fixed by
# (region, sign) generation.  Components repeat across positions far more
# than positions repeat, so the twist arithmetic is done once per component.
_COMP_CHILDREN: dict[tuple[tuple[int, int], ...], tuple[tuple[tuple[int, int], ...], ...]] = {}


def _component_children(
    comp: tuple[tuple[int, int], ...]
) -> tuple[tuple[tuple[int, int], ...], ...]:
    cache = _COMP_CANON
    kids = []
    for ri, (a, b) in enumerate(comp):
        if b:
            left, right = comp[:ri], comp[ri + 1 :]
            for sign in (1, -1):
                child_comp = left + ((a + sign, b - 1),) + right
                canon = cache.get(child_comp)
                if canon is None:
                    canon = cache[child_comp] = cache.setdefault(
                        child_comp[::-1], min(child_comp, child_comp[::-1])
                    )
                kids.append(canon)
    return tuple(dict.fromkeys(kids))


def _children(raw: Raw) -> Iterator[Raw]:
    """Distinct canonical successors of a canonical position.

    Only one component changes per move, so each child key is the changed
    component's cached canonical successor slotted back into the still-sorted
    remainder; equal components contribute identical successor sets and are
    visited once.
    """
    comp_kids = _COMP_CHILDREN
    for ci, comp in enumerate(raw):
        if ci and comp == raw[ci - 1]:
            continue
        kids = comp_kids.get(comp)
        if kids is None:
            kids = comp_kids[comp] = _component_children(comp)
        rest = raw[:ci] + raw[ci + 1 :]
        for canon in kids:
            at = bisect(rest, canon)
            yield rest[:at] + (canon,) + rest[at:]


def _solve(raw: Raw, mover: int, entries: dict[Raw, list[int | None]] | None) -> int:
    """Winner on a canonical raw position with ``mover`` to play."""
    entry = None
    if entries is not None:
        entry = entries.get(raw)
        if entry is not None:
            cached = entry[mover]
            if cached is not None:
                return cached
    opponent = 1 - mover
    winner = None
    moved = False
    comp_kids = _COMP_CHILDREN
    if len(raw) == 1:
        # Single component: the cached successor components are already
        # distinct, so no cross-component dedup is needed.
        comp = raw[0]
        kids = comp_kids.get(comp)
        if kids is None:
            kids = comp_kids[comp] = _component_children(comp)
        for canon in kids:
            moved = True
            if _solve((canon,), opponent, entries) == mover:
                winner = mover
                break
    else:
        # Distinct moves can still land on one canonical position (palindromic
        # regions across different components); solve each position once.
        seen: set[Raw] = set()
        for ci, comp in enumerate(raw):
            if ci and comp == raw[ci - 1]:
                continue
            kids = comp_kids.get(comp)
            if kids is None:
                kids = comp_kids[comp] = _component_children(comp)
            rest = raw[:ci] + raw[ci + 1 :]
            for canon in kids:
                moved = True
                at = bisect(rest, canon)
                key = rest[:at] + (canon,) + rest[at:]
                if key in seen:
                    continue
                seen.add(key)
                if _solve(key, opponent, entries) == mover:
                    winner = mover
                    break
            if winner is not None:
                break
    if winner is None:
        winner = opponent if moved else (_UNK if _all_unknots(raw) else _KNO)
    if entries is not None:
        if entry is None:
            entry = entries[raw] = [None, None]
        entry[mover] = winner
    return winner


def _validated_raw(position: SumPosition | RationalPseudodiagram) -> Raw:
    pos = as_sum(position)
    for comp in pos.components:
        if not comp.is_knot():
            raise NotAKnot(f"component {comp} closes to a two-component link")
    return pos.raw()


def _table_for(table: TranspositionTable | None, memoized: bool) -> TranspositionTable | None:
    if not memoized:
        return None
    return table if table is not None else DEFAULT_TABLE


def _entries_for(
    table: TranspositionTable | None, memoized: bool
) -> dict[Raw, list[int | None]] | None:
    t = _table_for(table, memoized)
    return t._entries if t is not None else None


def wins_moving_first(
    position: SumPosition | RationalPseudodiagram,
    mover: Player,
    *,
    table: TranspositionTable | None = None,
    memoized: bool = True,
) -> Player:
    """The perfect-play winner when ``mover`` makes the next move."""
    raw = _canonical(_validated_raw(position))
    winner = _solve(raw, _IDX_OF[mover], _entries_for(table, memoized))
    return _PLAYER_OF[winner]


def outcome(
    position: SumPosition | RationalPseudodiagram,
    *,
    table: TranspositionTable | None = None,
) -> OutcomeClass:
    """Outcome class from the winners under both first movers."""
    raw = _canonical(_validated_raw(position))
    entries = _entries_for(table, True)
    unknotter_first = _solve(raw, _UNK, entries)
    knotter_first = _solve(raw, _KNO, entries)
    if unknotter_first == _UNK:
        return OutcomeClass.U if knotter_first == _UNK else OutcomeClass.FIRST
    return OutcomeClass.SECOND if knotter_first == _UNK else OutcomeClass.K


def projections(
    position: SumPosition | RationalPseudodiagram,
) -> tuple[SumPosition, SumPosition]:
    """The even- and odd-parity members of {P, P # star}, in that order."""
    pos = as_sum(position)
    starred = pos.connect(STAR)
    return (pos, starred) if pos.parity() == 0 else (starred, pos)


# The nine legal (even, odd) projection outcome pairs and their X/Y values.
_XY_OF_PAIR = {
    (OutcomeClass.U, OutcomeClass.U): XYValue(1, 1),
    (OutcomeClass.U, OutcomeClass.FIRST): XYValue(1, 2),
    (OutcomeClass.SECOND, OutcomeClass.FIRST): XYValue(1, 3),
    (OutcomeClass.FIRST, OutcomeClass.U): XYValue(2, 1),
    (OutcomeClass.FIRST, OutcomeClass.FIRST): XYValue(2, 2),
    (OutcomeClass.K, OutcomeClass.FIRST): XYValue(2, 3),
    (OutcomeClass.FIRST, OutcomeClass.SECOND): XYValue(3, 1),
    (OutcomeClass.FIRST, OutcomeClass.K): XYValue(3, 2),
    (OutcomeClass.K, OutcomeClass.K): XYValue(3, 3),
}


def normalized_outcome(
    position: SumPosition | RationalPseudodiagram,
    *,
    table: TranspositionTable | None = None,
) -> NormalizedOutcome:
    even, odd = projections(position)
    pair = NormalizedOutcome(outcome(even, table=table), outcome(odd, table=table))
    if (pair.even_outcome, pair.odd_outcome) not in _XY_OF_PAIR:
        raise IllegalOutcomePair(f"{position}: projection outcomes {pair} are impossible")
    return pair


def xy(
    position: SumPosition | RationalPseudodiagram,
    *,
    table: TranspositionTable | None = None,
) -> XYValue:
    pair = normalized_outcome(position, table=table)
    return _XY_OF_PAIR[(pair.even_outcome, pair.odd_outcome)]


_DEFAULT_ZERO_MEMO: dict[Raw, bool] = {}


def is_zero_game(
    position: SumPosition | RationalPseudodiagram,
    *,
    table: TranspositionTable | None = None,
    memoized: bool = True,
) -> bool:
    """Whether the position is a zero game.

    A position is a zero game when the Unknotter wins moving first and every
    option of it has at least one option that is again a zero game.  Fully
    resolved unknots are zero games vacuously.  Summing a zero game onto any
    position leaves its outcome class unchanged.
    """
    raw = _canonical(_validated_raw(position))
    memo = _DEFAULT_ZERO_MEMO if memoized else {}
    return _zero(raw, _entries_for(table, memoized), memo)


def _zero(
    raw: Raw, entries: dict[Raw, list[int | None]] | None, memo: dict[Raw, bool]
) -> bool:
    cached = memo.get(raw)
    if cached is not None:
        return cached
    if _solve(raw, _UNK, entries) != _UNK:
        result = False
    else:
        result = True
        for child_key in _children(raw):
            if not any(_zero(grand, entries, memo) for grand in _children(child_key)):
                result = False
                break
    memo[raw] = result
    return result


def clear_caches() -> None:
    """Drop the shared memo tables (mainly for tests measuring cold solves)."""
    DEFAULT_TABLE.clear()
    _DEFAULT_ZERO_MEMO.clear()
    _COMP_CANON.clear()
    _COMP_CHILDREN.clear()
