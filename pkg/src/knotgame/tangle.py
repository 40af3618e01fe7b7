"""Rational tangle pseudodiagrams, their connected sums, and exact arithmetic.

A twist region carries ``resolved`` net signed twists that are already fixed
and ``unresolved`` crossings whose sign is still open.  A pseudodiagram is an
ordered list of twist regions built by the usual twist-and-reflect recipe;
closing its outer strands yields either a knot or a two-component link, which
is decided by the continued-fraction value of the twist list.  Positions of
the game are connected sums of such diagrams.

Text grammar (whitespace ignored)::

    position := diagram ("#" diagram)*
    diagram  := "[" region ("," region)* "]" | "[]"
    region   := int | "(" uint ")" | int "(" uint ")"

``a`` abbreviates ``a(0)`` and ``(b)`` abbreviates ``0(b)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import IllegalMove, NotAKnot, ParseError


class Fraction(NamedTuple):
    """Exact pair produced by evaluating a twist list.

    The closure of the tangle is a knot iff ``p`` is odd, and the unknot iff
    additionally ``abs(p) == 1``.  The pair is kept exactly as the iteration
    produces it; it is always coprime, so no reduction step is needed.
    """

    p: int
    q: int


class TwistRegion(NamedTuple):
    """One twist site: fixed signed twists plus crossings still to be chosen."""

    resolved: int
    unresolved: int


class MoveDescriptor(NamedTuple):
    """Resolution of one crossing: component index, region index, chosen sign."""

    component: int
    region: int
    sign: int


def evaluate_fraction(twists: Iterable[int]) -> Fraction:
    """Evaluate a twist list as a continued fraction, first entry innermost.

    Uses the projective iteration (num, den) <- (den, num + den * k), which
    tolerates zero entries and never divides.  The empty list gives
    Fraction(1, 0), the trivial tangle; callers treat it as the unknot.
    """
    num, den = 0, 1
    for k in twists:
        num, den = den, num + den * k
    return Fraction(den, num)


def _knot_fraction(twists: Iterable[int]) -> Fraction:
    f = evaluate_fraction(twists)
    if f.p % 2 == 0:
        raise NotAKnot(f"twist list {list(twists)!r} closes to a two-component link")
    return f


@dataclass(frozen=True)
class RationalPseudodiagram:
    """Ordered twist regions of one rational diagram; the empty list is the unknot."""

    regions: tuple[TwistRegion, ...] = ()

    def __post_init__(self) -> None:
        regions = tuple(TwistRegion(int(a), int(b)) for a, b in self.regions)
        if any(r.unresolved < 0 for r in regions):
            raise ValueError("unresolved crossing counts must be nonnegative")
        object.__setattr__(self, "regions", regions)

    @classmethod
    def shadow(cls, counts: Iterable[int]) -> "RationalPseudodiagram":
        """Diagram with the given unresolved counts and no resolved twists."""
        return cls(tuple(TwistRegion(0, int(b)) for b in counts))

    @classmethod
    def from_twists(cls, twists: Iterable[int]) -> "RationalPseudodiagram":
        """Fully resolved diagram with the given signed twist counts."""
        return cls(tuple(TwistRegion(int(a), 0) for a in twists))

    def __len__(self) -> int:
        return len(self.regions)

    @property
    def is_shadow(self) -> bool:
        return all(r.resolved == 0 for r in self.regions)

    @property
    def fully_resolved(self) -> bool:
        return all(r.unresolved == 0 for r in self.regions)

    def unresolved_count(self) -> int:
        return sum(r.unresolved for r in self.regions)

    def parity(self) -> int:
        return self.unresolved_count() % 2

    def twist_totals(self) -> tuple[int, ...]:
        """Per-region crossing totals, counting unresolved crossings as +1 each."""
        return tuple(r.resolved + r.unresolved for r in self.regions)

    def shadow_counts(self) -> tuple[int, ...]:
        return tuple(r.unresolved for r in self.regions)

    def fraction(self) -> Fraction:
        return evaluate_fraction(self.twist_totals())

    def is_knot(self) -> bool:
        """Whether the closure is a knot.  Resolution choices cannot change this."""
        return self.fraction().p % 2 != 0

    def is_unknot(self) -> bool:
        """Whether a fully resolved knot diagram closes to the unknot."""
        if not self.fully_resolved:
            raise ValueError("is_unknot needs a fully resolved diagram")
        p, _ = _knot_fraction(tuple(r.resolved for r in self.regions))
        return abs(p) == 1

    def reversed(self) -> "RationalPseudodiagram":
        return RationalPseudodiagram(tuple(reversed(self.regions)))

    def raw(self) -> tuple[tuple[int, int], ...]:
        return tuple((r.resolved, r.unresolved) for r in self.regions)

    def __str__(self) -> str:
        return format_diagram(self)


STAR = RationalPseudodiagram.shadow([1])


@dataclass(frozen=True)
class SumPosition:
    """Connected sum of rational pseudodiagrams; the empty sum is the unknot."""

    components: tuple[RationalPseudodiagram, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(
            c if isinstance(c, RationalPseudodiagram) else RationalPseudodiagram(tuple(c))
            for c in self.components
        )
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *diagrams: RationalPseudodiagram) -> "SumPosition":
        return cls(tuple(diagrams))

    def connect(self, other: "SumPosition | RationalPseudodiagram") -> "SumPosition":
        """Connected sum with another position or diagram."""
        if isinstance(other, RationalPseudodiagram):
            return SumPosition(self.components + (other,))
        return SumPosition(self.components + other.components)

    @property
    def is_shadow(self) -> bool:
        return all(c.is_shadow for c in self.components)

    @property
    def fully_resolved(self) -> bool:
        return all(c.fully_resolved for c in self.components)

    def unresolved_count(self) -> int:
        return sum(c.unresolved_count() for c in self.components)

    def parity(self) -> int:
        return self.unresolved_count() % 2

    def is_knot(self) -> bool:
        return all(c.is_knot() for c in self.components)

    def is_unknot(self) -> bool:
        """A sum closes to the unknot iff every summand does."""
        return all(c.is_unknot() for c in self.components)

    def options(self) -> list[tuple[MoveDescriptor, "SumPosition"]]:
        """All single-crossing resolutions, two per region with open crossings.

        Deterministic order: component index, then region index, then sign
        +1 before -1.  Every option has parity flipped relative to this
        position.
        """
        out = []
        for ci, comp in enumerate(self.components):
            for ri, region in enumerate(comp.regions):
                if region.unresolved:
                    for sign in (1, -1):
                        move = MoveDescriptor(ci, ri, sign)
                        out.append((move, self.apply_move(move)))
        return out

    def apply_move(self, move: MoveDescriptor) -> "SumPosition":
        ci, ri, sign = move
        if sign not in (1, -1):
            raise IllegalMove(f"sign must be +1 or -1, got {sign}")
        if not 0 <= ci < len(self.components):
            raise IllegalMove(f"no component {ci}")
        comp = self.components[ci]
        if not 0 <= ri < len(comp.regions):
            raise IllegalMove(f"no region {ri} in component {ci}")
        region = comp.regions[ri]
        if region.unresolved == 0:
            raise IllegalMove(f"region {ri} of component {ci} is fully resolved")
        new_region = TwistRegion(region.resolved + sign, region.unresolved - 1)
        new_comp = RationalPseudodiagram(
            comp.regions[:ri] + (new_region,) + comp.regions[ri + 1 :]
        )
        return SumPosition(
            self.components[:ci] + (new_comp,) + self.components[ci + 1 :]
        )

    def raw(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        return tuple(c.raw() for c in self.components)

    def canonical_key(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Sum-commutativity and reversal invariance let equivalent positions share a key."""
        return tuple(sorted(min(c, c[::-1]) for c in self.raw()))

    def __str__(self) -> str:
        return format_position(self)


_REGION_RE = re.compile(r"^(-?\d+)?(?:\((\d+)\))?$")


def parse_diagram(text: str) -> RationalPseudodiagram:
    """Parse one bracketed diagram, e.g. ``[2,-1(3),(2)]``."""
    s = re.sub(r"\s+", "", text)
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"diagram must be bracketed: {text!r}")
    body = s[1:-1]
    if not body:
        return RationalPseudodiagram()
    regions = []
    for part in body.split(","):
        m = _REGION_RE.match(part)
        if m is None or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"bad twist region {part!r} in {text!r}")
        regions.append(TwistRegion(int(m.group(1) or 0), int(m.group(2) or 0)))
    return RationalPseudodiagram(tuple(regions))


def parse_position(text: str) -> SumPosition:
    """Parse a ``#``-joined connected sum of diagrams."""
    parts = re.sub(r"\s+", "", text).split("#")
    if any(not p for p in parts):
        raise ParseError(f"empty summand in {text!r}")
    return SumPosition(tuple(parse_diagram(p) for p in parts))


def format_region(region: TwistRegion) -> str:
    a, b = region
    if b == 0:
        return str(a)
    if a == 0:
        return f"({b})"
    return f"{a}({b})"


def format_diagram(diagram: RationalPseudodiagram) -> str:
    return "[" + ",".join(format_region(r) for r in diagram.regions) + "]"


def format_position(position: SumPosition) -> str:
    if not position.components:
        return "[]"
    return "#".join(format_diagram(c) for c in position.components)


def as_sum(position: "SumPosition | RationalPseudodiagram") -> SumPosition:
    if isinstance(position, RationalPseudodiagram):
        return SumPosition((position,))
    return position


def iter_moves(position: SumPosition) -> Iterator[MoveDescriptor]:
    for ci, comp in enumerate(position.components):
        for ri, region in enumerate(comp.regions):
            if region.unresolved:
                yield MoveDescriptor(ci, ri, 1)
                yield MoveDescriptor(ci, ri, -1)
