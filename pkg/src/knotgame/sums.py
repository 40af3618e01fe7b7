"""Closed-form outcomes for connected sums of rational knot shadows.

The winner of a sum of shadows never needs game-tree search: if every
summand is odd-even reducible the Unknotter wins outright; otherwise the
total crossing number decides it, the second player winning on even totals
and the first player on odd.  The solver stays available here purely as a
cross-checking oracle for that rule.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from . import rewrite, solver
from .errors import BudgetExceeded, NotAKnot, NotAShadow
from .tangle import RationalPseudodiagram, SumPosition, as_sum, evaluate_fraction


class OutcomeRationale(Enum):
    ALL_SUMMANDS_ODD_EVEN_REDUCIBLE = "all-summands-odd-even-reducible"
    SOME_IRREDUCIBLE_EVEN_PARITY = "some-irreducible-even-parity"
    SOME_IRREDUCIBLE_ODD_PARITY = "some-irreducible-odd-parity"


class ClosedFormOutcome(NamedTuple):
    outcome: solver.OutcomeClass
    rationale: OutcomeRationale


class OracleReport(NamedTuple):
    position: SumPosition
    closed_form: ClosedFormOutcome
    solver_outcome: solver.OutcomeClass
    agree: bool


@lru_cache(maxsize=None)
def _kind_of_counts(counts: tuple[int, ...]) -> rewrite.ShadowKind:
    return rewrite.classify_shadow(RationalPseudodiagram.shadow(counts)).kind


def _components(
    position: SumPosition | RationalPseudodiagram | Sequence[RationalPseudodiagram],
) -> tuple[RationalPseudodiagram, ...]:
    if isinstance(position, (SumPosition, RationalPseudodiagram)):
        comps = as_sum(position).components
    else:
        comps = tuple(position)
    if not comps:
        raise ValueError("need at least one summand")
    return comps


def outcome_closed_form(
    position: SumPosition | RationalPseudodiagram | Sequence[RationalPseudodiagram],
) -> ClosedFormOutcome:
    """Winner of a sum of knot shadows by classification and parity alone."""
    comps = _components(position)
    all_reducible = True
    total = 0
    for comp in comps:
        if not comp.is_shadow:
            raise NotAShadow(f"summand {comp} has resolved crossings")
        counts = comp.shadow_counts()
        if evaluate_fraction(counts).p % 2 == 0:
            raise NotAKnot(f"summand {comp} closes to a two-component link")
        total += sum(counts)
        if _kind_of_counts(counts) is not rewrite.ShadowKind.ODD_EVEN_REDUCIBLE:
            all_reducible = False
    if all_reducible:
        return ClosedFormOutcome(
            solver.OutcomeClass.U, OutcomeRationale.ALL_SUMMANDS_ODD_EVEN_REDUCIBLE
        )
    if total % 2 == 0:
        return ClosedFormOutcome(
            solver.OutcomeClass.SECOND, OutcomeRationale.SOME_IRREDUCIBLE_EVEN_PARITY
        )
    return ClosedFormOutcome(
        solver.OutcomeClass.FIRST, OutcomeRationale.SOME_IRREDUCIBLE_ODD_PARITY
    )


def outcome_oracle_check(
    position: SumPosition | RationalPseudodiagram | Sequence[RationalPseudodiagram],
    *,
    budget: int = 24,
    table: solver.TranspositionTable | None = None,
) -> OracleReport:
    """Run both the closed form and the game-tree solver and compare."""
    pos = SumPosition(_components(position))
    if pos.unresolved_count() > budget:
        raise BudgetExceeded(
            f"{pos} has {pos.unresolved_count()} crossings, budget is {budget}"
        )
    closed = outcome_closed_form(pos)
    solved = solver.outcome(pos, table=table)
    return OracleReport(pos, closed, solved, closed.outcome is solved)


def enumerate_knot_shadows(
    max_regions: int,
    max_entry: int,
    max_crossings: int,
    *,
    min_crossings: int = 1,
) -> list[RationalPseudodiagram]:
    """All rational knot shadows within the bounds, one per reversal class.

    Entries range over 0..max_entry; region lists over 1..max_regions
    regions.  Reversal gives an equivalent diagram, so only the
    lexicographically smaller orientation of each pair is kept.
    """
    seen: set[tuple[int, ...]] = set()
    out: list[RationalPseudodiagram] = []
    for n in range(1, max_regions + 1):
        for counts in product(range(max_entry + 1), repeat=n):
            if not min_crossings <= sum(counts) <= max_crossings:
                continue
            canon = min(counts, counts[::-1])
            if canon in seen:
                continue
            seen.add(canon)
            if evaluate_fraction(canon).p % 2 != 0:
                out.append(RationalPseudodiagram.shadow(canon))
    out.sort(key=lambda d: (d.unresolved_count(), len(d), d.shadow_counts()))
    return out


def enumerate_shadow_multisets(
    shadows: Sequence[RationalPseudodiagram],
    max_crossings: int,
    *,
    min_components: int = 1,
) -> Iterator[tuple[RationalPseudodiagram, ...]]:
    """Multisets of the given shadows whose total crossing number fits the cap."""
    pool = sorted(shadows, key=lambda d: (d.unresolved_count(), d.shadow_counts()))

    def rec(
        start: int, left: int, chosen: tuple[RationalPseudodiagram, ...]
    ) -> Iterator[tuple[RationalPseudodiagram, ...]]:
        if len(chosen) >= min_components:
            yield chosen
        for i in range(start, len(pool)):
            cost = pool[i].unresolved_count()
            if cost > left:
                continue
            yield from rec(i, left - cost, chosen + (pool[i],))

    yield from rec(0, max_crossings, ())


# Shared-table ceiling for sweeps.  Entries run a couple hundred bytes, so
# this keeps the table under ~3GB; past it the table is dropped wholesale,
# and neighbouring multisets rebuild the shared prefix states quickly.
_SWEEP_TABLE_CAP = 12_000_000


def sweep(
    max_crossings: int,
    *,
    max_regions: int = 4,
    max_entry: int = 4,
    table: solver.TranspositionTable | None = None,
) -> Iterator[OracleReport]:
    """Closed form vs. solver over every bounded multiset of knot shadows."""
    shadows = enumerate_knot_shadows(max_regions, max_entry, max_crossings)
    shared = table if table is not None else solver.TranspositionTable()
    capped = table is None
    for combo in enumerate_shadow_multisets(shadows, max_crossings):
        yield outcome_oracle_check(
            SumPosition(combo), budget=max_crossings, table=shared
        )
        if capped and len(shared) > _SWEEP_TABLE_CAP:
            shared.clear()
