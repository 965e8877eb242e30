"""Pencils of plane sextics and their Plücker coordinates.

A pencil is spanned by two sextics ``f`` and ``g``.  Its Plücker vector holds
the 378 minors ``m[i,j,k,l] = f_ij * g_kl - f_kl * g_ij`` over the canonical
quadruples ``(i, j) < (k, l)`` (lexicographically).  A diagonal one-parameter
subgroup with weights ``(a_x, a_y, a_z)`` scales ``m[i,j,k,l]`` by
``t ** e[i,j,k,l]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Tuple

from .forms import HomForm, LinearChange, as_rational, integral_coefficients, monomials, substitute

DEGREE = 6
SEXTIC_MONOMIALS = monomials(DEGREE)

Quadruple = Tuple[int, int, int, int]

QUADRUPLES: Tuple[Quadruple, ...] = tuple(
    (i, j, k, l)
    for a, (i, j) in enumerate(SEXTIC_MONOMIALS)
    for (k, l) in SEXTIC_MONOMIALS[a + 1:]
)
QUADRUPLE_POSITION: Dict[Quadruple, int] = {q: n for n, q in enumerate(QUADRUPLES)}


def is_quadruple(q) -> bool:
    """Canonical quadruple test: both pairs are sextic monomials and ``(i,j) < (k,l)``."""
    i, j, k, l = q
    return (
        min(q) >= 0
        and i + j <= DEGREE
        and k + l <= DEGREE
        and (i < k or (i == k and j < l))
    )


def pair_class(q: Quadruple) -> Tuple[int, int]:
    """The class ``(r, s) = (i + k, j + l)`` a minor belongs to."""
    i, j, k, l = q
    return i + k, j + l


class Pencil:
    """A pencil of sextics given by two linearly independent generators.

    Equality is projective: two pencils are equal when they span the same
    two-dimensional space of forms.
    """

    __slots__ = ("f", "g", "_pluecker")

    def __init__(self, f: HomForm, g: HomForm):
        for name, form in (("f", f), ("g", g)):
            if not isinstance(form, HomForm):
                raise TypeError(f"{name} must be a HomForm")
            if form.degree != DEGREE:
                raise ValueError(f"{name} has degree {form.degree}, expected {DEGREE}")
            if form.is_zero():
                raise ValueError(f"{name} is the zero form")
        if f.is_proportional(g):
            raise ValueError("generators are proportional; they do not span a pencil")
        self.f = f
        self.g = g
        self._pluecker = None

    def generators(self) -> Tuple[HomForm, HomForm]:
        return self.f, self.g

    def pluecker(self) -> "PlueckerVector":
        if self._pluecker is None:
            self._pluecker = pluecker(self)
        return self._pluecker

    def swapped(self) -> "Pencil":
        return Pencil(self.g, self.f)

    def transform(self, frame: LinearChange) -> "Pencil":
        """The same pencil written in the coordinates given by ``frame``."""
        return Pencil(substitute(self.f, frame), substitute(self.g, frame))

    def __eq__(self, other):
        if not isinstance(other, Pencil):
            return NotImplemented
        return self.pluecker().is_proportional(other.pluecker())

    def __hash__(self):
        return hash(self.pluecker().normalized().entries)

    def __repr__(self) -> str:
        return f"Pencil(f='{self.f}', g='{self.g}')"


@dataclass(frozen=True)
class PlueckerVector:
    """Minors indexed by :data:`QUADRUPLES`."""

    entries: Tuple[Fraction, ...]

    def __getitem__(self, q: Quadruple) -> Fraction:
        """Antisymmetric lookup: ``m[k,l,i,j] = -m[i,j,k,l]`` and ``m[i,j,i,j] = 0``."""
        i, j, k, l = q
        if (i, j) == (k, l):
            return Fraction(0)
        pos = QUADRUPLE_POSITION.get(q)
        if pos is not None:
            return self.entries[pos]
        pos = QUADRUPLE_POSITION.get((k, l, i, j))
        if pos is None:
            raise KeyError(q)
        return -self.entries[pos]

    def nonzero(self) -> Iterator[Tuple[Quadruple, Fraction]]:
        for q, m in zip(QUADRUPLES, self.entries):
            if m:
                yield q, m

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scale(self, factor) -> "PlueckerVector":
        factor = as_rational(factor)
        return PlueckerVector(tuple(factor * m for m in self.entries))

    def normalized(self) -> "PlueckerVector":
        """Scaled so that the first nonzero entry is 1."""
        lead = next((m for m in self.entries if m), None)
        return self if lead is None else self.scale(1 / lead)

    def is_proportional(self, other: "PlueckerVector") -> bool:
        return self.normalized() == other.normalized()


def pluecker(p: Pencil) -> PlueckerVector:
    # integer minors over a common denominator are much cheaper than Fractions
    f, df = integral_coefficients(p.f.coeffs)
    g, dg = integral_coefficients(p.g.coeffs)
    den = df * dg
    zero = Fraction(0)
    n = len(f)
    return PlueckerVector(tuple(
        Fraction(m, den) if m else zero
        for m in (f[a] * g[b] - f[b] * g[a] for a in range(n) for b in range(a + 1, n))
    ))


def change_pencil_basis(p: Pencil, alpha, beta, gamma, delta) -> Pencil:
    """New generators ``(alpha f + beta g, gamma f + delta g)``.

    Every minor is multiplied by ``alpha*delta - beta*gamma``.
    """
    alpha, beta, gamma, delta = map(as_rational, (alpha, beta, gamma, delta))
    if alpha * delta - beta * gamma == 0:
        raise ValueError("basis change has zero determinant")
    return Pencil(
        p.f.scale(alpha) + p.g.scale(beta),
        p.f.scale(gamma) + p.g.scale(delta),
    )


@dataclass(frozen=True)
class WeightData:
    """Weights of a diagonal one-parameter subgroup.

    Either integral ``(a_x, a_y, a_z)`` with ``a_x >= a_y >= a_z``,
    ``a_x > 0`` and zero sum, or normalized to ``(1, a, -1 - a)`` with
    ``a`` in ``[-1/2, 1]``.
    """

    a_x: Fraction
    a_y: Fraction
    a_z: Fraction
    integral: bool

    @classmethod
    def normalized(cls, a) -> "WeightData":
        a = as_rational(a)
        if not Fraction(-1, 2) <= a <= 1:
            raise ValueError(f"normalized weight a={a} outside [-1/2, 1]")
        return cls(Fraction(1), a, -1 - a, False)

    @classmethod
    def from_integers(cls, a_x: int, a_y: int, a_z: int) -> "WeightData":
        if any(int(v) != v for v in (a_x, a_y, a_z)):
            raise ValueError("integral weights must be integers")
        if not (a_x >= a_y >= a_z and a_x > 0 and a_x + a_y + a_z == 0):
            raise ValueError(
                f"weights ({a_x}, {a_y}, {a_z}) must satisfy a_x >= a_y >= a_z, "
                "a_x > 0 and a_x + a_y + a_z = 0"
            )
        return cls(Fraction(a_x), Fraction(a_y), Fraction(a_z), True)

    @property
    def a(self) -> Fraction:
        """The normalized parameter ``a_y / a_x``."""
        return self.a_y / self.a_x

    def monomial_weight(self, i: int, j: int) -> Fraction:
        return self.a_x * i + self.a_y * j + self.a_z * (DEGREE - i - j)


def weight_exponent(q: Quadruple, w) -> Fraction:
    """``e[i,j,k,l]``; ``w`` is a :class:`WeightData` or a normalized ``a``."""
    if not isinstance(w, WeightData):
        w = WeightData.normalized(w)
    r, s = pair_class(q)
    return w.a_x * (2 * r + s - 12) + w.a_y * (2 * s + r - 12)


def diagonal_action(p: Pencil, w: WeightData, t) -> Pencil:
    """Apply ``lambda(t) = diag(t^a_x, t^a_y, t^a_z)`` to both generators."""
    if not w.integral:
        raise ValueError("the diagonal action needs integral weights")
    t = as_rational(t)
    if t == 0:
        raise ValueError("t must be nonzero")

    def act(form: HomForm) -> HomForm:
        return HomForm(
            form.degree,
            {(i, j): c * t ** int(w.monomial_weight(i, j)) for (i, j), c in form.items()},
        )

    return Pencil(act(p.f), act(p.g))


def compute_mu(p: Pencil, a) -> Fraction:
    """Hilbert-Mumford weight: min of ``e(a)`` over the nonzero minors."""
    w = a if isinstance(a, WeightData) else WeightData.normalized(a)
    # e depends only on the class of the quadruple
    classes = {pair_class(q) for q, _ in p.pluecker().nonzero()}
    return min(w.a_x * (2 * r + s - 12) + w.a_y * (2 * s + r - 12) for r, s in classes)


def mu_minimizers(p: Pencil, a) -> Tuple[Quadruple, ...]:
    """Quadruples attaining :func:`compute_mu`, in canonical order."""
    w = a if isinstance(a, WeightData) else WeightData.normalized(a)
    mu = compute_mu(p, w)
    return tuple(q for q, _ in p.pluecker().nonzero() if weight_exponent(q, w) == mu)
