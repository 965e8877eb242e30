import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import pencils, rand_pencil, rand_rational
from sextic_pencils.criterion import check_pattern, minimal_pattern
from sextic_pencils.forms import HomForm, multiply
from sextic_pencils.parsing import parse_form
from sextic_pencils.pluecker import (
    QUADRUPLES,
    SEXTIC_MONOMIALS,
    Pencil,
    WeightData,
    change_pencil_basis,
    compute_mu,
    diagonal_action,
    is_quadruple,
    mu_minimizers,
    pair_class,
    pluecker,
    weight_exponent,
)


def sextic(text, **params):
    return parse_form(text, 6, {k: Fraction(v) for k, v in params.items()})


def square(text, **params):
    C = parse_form(text, 3, {k: Fraction(v) for k, v in params.items()})
    return multiply(C, C)


def brute_quadruples():
    idx = [(i, j) for i in range(7) for j in range(7) if i + j <= 6]
    return [(i, j, k, l) for (i, j), (k, l) in product(idx, idx) if i < k or (i == k and j < l)]


def test_quadruple_count_and_order():
    assert len(QUADRUPLES) == 378
    assert list(QUADRUPLES) == sorted(brute_quadruples())
    assert all(is_quadruple(q) for q in QUADRUPLES)
    assert not is_quadruple((1, 0, 0, 0))
    assert len(SEXTIC_MONOMIALS) == 28


def test_pencil_rejects_bad_generators():
    f = sextic("x^6")
    with pytest.raises(ValueError, match="proportional"):
        Pencil(f, sextic("3*x^6"))
    with pytest.raises(ValueError, match="zero"):
        Pencil(f, HomForm.zero(6))
    with pytest.raises(ValueError, match="degree"):
        Pencil(f, parse_form("x^3", 3))


def test_x6_y6_single_minor():
    v = pluecker(Pencil(sextic("x^6"), sextic("y^6")))
    nz = list(v.nonzero())
    assert nz == [((0, 6, 6, 0), Fraction(-1))]
    assert sum(1 for q in QUADRUPLES if v[q] == 0) == 377


def test_prop_4_15_pencil_satisfies_first_pattern():
    p = Pencil(sextic("x^3*y^3"), square("x*z^2 - y^3 + 3*x*y^2 - 2*x^2*y"))
    assert check_pattern(p, minimal_pattern(False, 1))


def test_entry_formula():
    p = rand_pencil(random.Random(1))
    v = p.pluecker()
    for (i, j, k, l) in QUADRUPLES:
        assert v[(i, j, k, l)] == p.f.coeff(i, j) * p.g.coeff(k, l) - p.f.coeff(k, l) * p.g.coeff(i, j)


def test_extended_index_lookup():
    p = rand_pencil(random.Random(2))
    v = p.pluecker()
    for (i, j, k, l) in QUADRUPLES[::7]:
        assert v[(k, l, i, j)] == -v[(i, j, k, l)]
        assert v[(i, j, i, j)] == 0
    with pytest.raises(KeyError):
        v[(7, 0, 0, 0)]


@given(pencils())
@settings(max_examples=100)
def test_antisymmetry_by_reevaluation(p):
    v = p.pluecker()
    swapped = Pencil(p.g, p.f).pluecker()
    for q in QUADRUPLES:
        i, j, k, l = q
        # re-evaluate with the index pairs exchanged
        direct = p.f.coeff(k, l) * p.g.coeff(i, j) - p.f.coeff(i, j) * p.g.coeff(k, l)
        assert v[(k, l, i, j)] == direct == -v[q]
        assert swapped[q] == -v[q]


# basis changes


def test_swap_negates():
    p = rand_pencil(random.Random(3))
    assert change_pencil_basis(p, 0, 1, 1, 0).pluecker() == p.pluecker().scale(-1)


def test_reduction_at_zero_index():
    rng = random.Random(4)
    p = rand_pencil(rng, 1.0)
    while p.g.coeff(0, 0) == 0:
        p = rand_pencil(rng, 1.0)
    ratio = p.f.coeff(0, 0) / p.g.coeff(0, 0)
    q = change_pencil_basis(p, 1, -ratio, 0, 1)
    assert q.f.coeff(0, 0) == 0
    assert q == p


def test_singular_basis_change():
    p = rand_pencil(random.Random(5))
    with pytest.raises(ValueError):
        change_pencil_basis(p, 1, 2, 2, 4)


@given(pencils(), st.tuples(*[st.integers(-5, 5)] * 4).filter(lambda t: t[0] * t[3] != t[1] * t[2]))
@settings(max_examples=100)
def test_basis_change_scales_by_determinant(p, m):
    a, b, c, d = m
    q = change_pencil_basis(p, a, b, c, d)
    assert q.pluecker() == p.pluecker().scale(a * d - b * c)
    assert q.pluecker().is_proportional(p.pluecker())


# weights


def test_class_four_four_weight_zero():
    for a in (Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(1)):
        assert weight_exponent((0, 4, 4, 0), a) == 0
        assert weight_exponent((1, 2, 3, 2), a) == 0


def test_seven_zero_at_one():
    assert weight_exponent((1, 0, 6, 0), Fraction(1)) == -3


def test_integral_weights_validated():
    with pytest.raises(ValueError):
        WeightData.from_integers(1, 1, 1)
    with pytest.raises(ValueError):
        WeightData.from_integers(0, 1, -1)
    with pytest.raises(ValueError):
        WeightData.normalized(Fraction(3, 2))


def random_weights(rng):
    while True:
        ay = rng.randint(-6, 6)
        az = rng.randint(-12, ay)
        ax = -ay - az
        if ax >= ay and ax > 0:
            return WeightData.from_integers(ax, ay, az)


def test_exponent_is_sum_of_monomial_weights():
    rng = random.Random(6)
    for _ in range(50):
        w = random_weights(rng)
        for (i, j, k, l) in QUADRUPLES:
            assert weight_exponent((i, j, k, l), w) == w.monomial_weight(i, j) + w.monomial_weight(k, l)


def test_normalized_agrees_up_to_positive_factor():
    rng = random.Random(7)
    for _ in range(30):
        w = random_weights(rng)
        if not Fraction(-1, 2) <= w.a <= 1:
            continue
        for q in QUADRUPLES[::5]:
            assert weight_exponent(q, w) == w.a_x * weight_exponent(q, w.a)


def test_diagonal_action_identity_and_known_scale():
    p = Pencil(sextic("x^6"), sextic("y^6"))
    w = WeightData.from_integers(1, 0, -1)
    assert diagonal_action(p, w, 1).f == p.f
    acted = diagonal_action(p, w, 2)
    assert acted.pluecker()[(0, 6, 6, 0)] == -(2 ** 6)
    with pytest.raises(ValueError):
        diagonal_action(p, w, 0)


@given(pencils(), st.integers(0, 10 ** 6), st.sampled_from([Fraction(2), Fraction(-1, 3), Fraction(3, 2)]))
@settings(max_examples=100)
def test_diagonal_action_law(p, seed, t):
    w = random_weights(random.Random(seed))
    before = p.pluecker()
    after = diagonal_action(p, w, t).pluecker()
    for q in QUADRUPLES:
        assert after[q] == t ** int(weight_exponent(q, w)) * before[q]


# mu


def test_mu_x6_y6():
    p = Pencil(sextic("x^6"), sextic("y^6"))
    assert compute_mu(p, 0) == 6
    assert mu_minimizers(p, 0) == ((0, 6, 6, 0),)


def test_mu_prop_4_17_at_three_quarters():
    p = Pencil(sextic("x^5*(x - z)"), square("y^2*z - x*(x-z)*(x-a*z)", a=2))
    # frozen from enumeration: minimum attained at the (7,0) class
    assert compute_mu(p, Fraction(3, 4)) == Fraction(-7, 4)
    assert (2, 0, 5, 0) in mu_minimizers(p, Fraction(3, 4))
    assert p.pluecker()[(2, 0, 5, 0)] == 4


def test_mu_is_minimum_over_nonzero():
    rng = random.Random(8)
    for _ in range(20):
        p = rand_pencil(rng, 0.3)
        a = rand_rational(rng, -2, 4, 4)
        a = min(max(a, Fraction(-1, 2)), Fraction(1))
        want = min(weight_exponent(q, a) for q in QUADRUPLES if p.pluecker()[q] != 0)
        assert compute_mu(p, a) == want


@given(pencils(0.3), st.fractions(-Fraction(1, 2), 1, max_denominator=12),
       st.fractions(-Fraction(1, 2), 1, max_denominator=12))
@settings(max_examples=100)
def test_mu_concave(p, a1, a2):
    mid = (a1 + a2) / 2
    assert compute_mu(p, mid) >= (compute_mu(p, a1) + compute_mu(p, a2)) / 2


@given(pencils(0.3), st.integers(0, 10 ** 6), st.integers(1, 4))
@settings(max_examples=60)
def test_mu_sign_integral_vs_normalized(p, seed, k):
    w = random_weights(random.Random(seed))
    if not Fraction(-1, 2) <= w.a <= 1:
        return
    integral = compute_mu(p, w)
    scaled = compute_mu(p, WeightData.from_integers(*(int(k * c) for c in (w.a_x, w.a_y, w.a_z))))
    normalized = compute_mu(p, w.a)
    sign = lambda v: (v > 0) - (v < 0)
    assert sign(integral) == sign(normalized) == sign(scaled)


def test_pair_class():
    assert pair_class((1, 5, 2, 4)) == (3, 9)
