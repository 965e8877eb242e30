import random
from fractions import Fraction

from hypothesis import strategies as st

from sextic_pencils.forms import HomForm, LinearChange, monomials
from sextic_pencils.pluecker import Pencil

small_rationals = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
nonzero_rationals = small_rationals.filter(bool)


@st.composite
def forms(draw, degree=6, density=0.5):
    idx = monomials(degree)
    size = max(1, round(density * len(idx)))
    coeffs = draw(st.dictionaries(st.sampled_from(idx), small_rationals, max_size=size))
    f = HomForm(degree, coeffs)
    if f.is_zero():
        f = HomForm.monomial(*draw(st.sampled_from(idx)), degree)
    return f


@st.composite
def pencils(draw, density=0.5):
    f = draw(forms(6, density))
    g = draw(forms(6, density).filter(lambda g: not f.is_proportional(g)))
    return Pencil(f, g)


def _invertible(m):
    try:
        return LinearChange(m)
    except ValueError:
        return None


def frames():
    row = st.lists(st.integers(-3, 3), min_size=3, max_size=3)
    return st.lists(row, min_size=3, max_size=3).map(_invertible).filter(bool)


def rand_rational(rng, lo=-9, hi=9, den=5):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_form(rng, degree=6, density=0.6):
    while True:
        f = HomForm(degree, {m: rand_rational(rng) for m in monomials(degree) if rng.random() < density})
        if not f.is_zero():
            return f


def rand_pencil(rng, density=0.6):
    while True:
        f, g = rand_form(rng, 6, density), rand_form(rng, 6, density)
        if not f.is_proportional(g):
            return Pencil(f, g)


def rand_frame(rng):
    while True:
        try:
            return LinearChange([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        except ValueError:
            pass


def dense_generic_pencil(seed):
    rng = random.Random(seed)
    return rand_pencil(rng, density=1.0)
