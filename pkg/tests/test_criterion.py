import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import pencils, rand_pencil
from sextic_pencils.criterion import (
    CELL_REPRESENTATIVES,
    PAIR_CLASSES,
    VanishingPattern,
    check_pattern,
    class_weight,
    critical_values,
    derive_subdivision,
    format_patterns,
    minimal_pattern,
    parse_patterns,
    pattern_at,
)
from sextic_pencils.forms import multiply
from sextic_pencils.halphen import printed_tables
from sextic_pencils.parsing import parse_form
from sextic_pencils.pluecker import Pencil, change_pencil_basis

NONSTRICT_CELLS = [(F(-1, 3), F(-2, 7)), (F(-2, 7), F(-1, 5)), (F(-1, 11), F(0)),
                   (F(1, 7), F(1, 4)), (F(1, 4), F(2, 5)), (F(1, 2), F(1))]
STRICT_VALUES = [F(-1, 2), F(-2, 7), F(-1, 5), F(0), F(1, 4), F(2, 5), F(1)]


def test_ninety_one_classes():
    assert len(PAIR_CLASSES) == 91


def test_class_weight_examples():
    for a in (F(-1, 2), F(0), F(1)):
        assert class_weight((0, 0), a) == -12 * (1 + a)
        assert class_weight((4, 4), a) == 0
    assert class_weight((2, 2), 0) == -6


def test_pattern_at_first_cell_has_fifty_pairs():
    pat = pattern_at(F(-13, 42))
    assert len(pat) == 50
    assert pat.pairs == printed_tables(False)[0][1].pairs


def test_strict_endpoints_add_two_two():
    printed = printed_tables(True)
    low = pattern_at(F(-1, 2), strict=True)
    high = pattern_at(F(1), strict=True)
    assert low.pairs == printed[0][1].pairs | {(2, 2)}
    assert high.pairs == printed[-1][1].pairs | {(2, 2)}
    assert (7, 0) in high


def test_pattern_out_of_range():
    with pytest.raises(ValueError):
        pattern_at(F(-3, 4))


def test_nonstrict_subdivision():
    sub = derive_subdivision(False)
    assert sub.witnesses() == NONSTRICT_CELLS


def test_strict_subdivision():
    sub = derive_subdivision(True)
    assert sub.witnesses() == STRICT_VALUES


def test_representatives_inside_cells():
    for rep, (lo, hi) in zip(CELL_REPRESENTATIVES, NONSTRICT_CELLS):
        assert lo < rep < hi
    assert [p.representative() for p in derive_subdivision(False).minimal_patterns] == list(CELL_REPRESENTATIVES)


def test_minimal_patterns_incomparable():
    for strict in (False, True):
        pats = derive_subdivision(strict).minimal_patterns
        for p in pats:
            for q in pats:
                if p is not q:
                    assert not p.pairs <= q.pairs


def test_breakpoints_are_roots():
    bps = critical_values()
    assert bps[0] == F(-1, 2) and bps[-1] == 1
    assert list(bps) == sorted(set(bps))
    for a in bps[1:-1]:
        assert any(class_weight(c, a) == 0 and (2 * c[1] + c[0] - 12) for c in PAIR_CLASSES)


def test_case_lookup():
    assert minimal_pattern(True, 7).witness == 1
    with pytest.raises(KeyError):
        minimal_pattern(False, 7)


@given(st.fractions(F(-1, 2), 1, max_denominator=60))
def test_strict_inside_nonstrict(a):
    assert pattern_at(a, True).pairs <= pattern_at(a, False).pairs


def test_cell_constant_at_two_interior_points():
    bps = critical_values()
    for lo, hi in zip(bps, bps[1:]):
        a1, a2 = lo + (hi - lo) / 3, lo + 2 * (hi - lo) / 3
        for strict in (False, True):
            assert pattern_at(a1, strict).pairs == pattern_at(a2, strict).pairs


def test_nonstrict_witnesses_are_intervals_strict_are_points():
    assert all(isinstance(p.witness, tuple) for p in derive_subdivision(False).minimal_patterns)
    strict_w = [p.witness for p in derive_subdivision(True).minimal_patterns]
    assert all(not isinstance(w, tuple) for w in strict_w)
    assert sorted(strict_w) == STRICT_VALUES


# check_pattern


def test_x6_y6_against_first_pattern():
    p = Pencil(parse_form("x^6"), parse_form("y^6"))
    assert check_pattern(p, minimal_pattern(False, 1))


def test_prop_4_14_against_first_pattern():
    C = parse_form("x^2*y + x*z^2 - y^3 - x*y^2", 3)
    p = Pencil(parse_form("x^3*(x*z^2 - y^2*(y+x))", 6), multiply(C, C))
    assert check_pattern(p, minimal_pattern(False, 1))


def test_generic_pencil_violates_every_pattern():
    rng = random.Random(9)
    for _ in range(10):
        p = rand_pencil(rng, 1.0)
        for strict in (False, True):
            for pat in derive_subdivision(strict).minimal_patterns:
                res = check_pattern(p, pat)
                assert not res
                assert res.violating_minor is not None
                a, b = res.violating_minor[:2], res.violating_minor[2:]
                assert p.f.coeff(*a) * p.g.coeff(*b) != p.f.coeff(*b) * p.g.coeff(*a)


def test_violating_minor_is_first_in_order():
    p = Pencil(parse_form("x^6 + z^6"), parse_form("y*z^5"))
    res = check_pattern(p, [(0, 1)])
    assert res.violating_minor == (0, 0, 0, 1)


@given(pencils(0.2), st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda t: t[0] * t[3] != t[1] * t[2]),
       st.integers(1, 6), st.booleans())
@settings(max_examples=100)
def test_check_basis_invariant(p, m, case, strict):
    if not strict and case == 7:
        case = 6
    pat = minimal_pattern(strict, case)
    q = change_pencil_basis(p, *m)
    assert bool(check_pattern(p, pat)) == bool(check_pattern(q, pat))


@given(pencils(0.2), st.sets(st.sampled_from(PAIR_CLASSES), max_size=20), st.sets(st.sampled_from(PAIR_CLASSES), max_size=5))
@settings(max_examples=100)
def test_check_monotone(p, small, extra):
    big = small | extra
    if check_pattern(p, big):
        assert check_pattern(p, small)


# fixture format


def test_fixture_round_trip():
    for strict in (False, True):
        pats = derive_subdivision(strict).minimal_patterns
        back = parse_patterns(format_patterns(pats))
        assert [n for n, _ in back] == list(range(1, len(pats) + 1))
        assert [p for _, p in back] == list(pats)


def test_fixture_rejects_orphan_pairs():
    with pytest.raises(ValueError):
        parse_patterns("0,1 0,2\n")


def test_pattern_membership():
    pat = VanishingPattern(frozenset({(0, 1)}), False, F(0))
    assert (0, 1) in pat and [0, 1] in pat and (1, 0) not in pat
