"""Homogeneous ternary forms with exact rational coefficients.

A form of degree ``d`` in ``x, y, z`` is stored densely as a tuple of
:class:`~fractions.Fraction` indexed by the monomial list ``monomials(d)``,
which enumerates ``(i, j)`` (the exponents of ``x`` and ``y``; the exponent of
``z`` is ``d - i - j``) in lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .linalg import det3, rank

Monomial = Tuple[int, int]
Point = Tuple[Fraction, Fraction, Fraction]


@lru_cache(maxsize=None)
def monomials(degree: int) -> Tuple[Monomial, ...]:
    """All ``(i, j)`` with ``i + j <= degree`` in canonical (lexicographic) order."""
    if degree < 0:
        raise ValueError(f"negative degree {degree}")
    return tuple((i, j) for i in range(degree + 1) for j in range(degree + 1 - i))


@lru_cache(maxsize=None)
def _positions(degree: int) -> Dict[Monomial, int]:
    return {m: n for n, m in enumerate(monomials(degree))}


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(value)


def integral_coefficients(coeffs) -> Tuple[List[int], int]:
    """``(numerators, den)`` with ``coeffs[n] == numerators[n] / den``."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class HomForm:
    """An immutable homogeneous polynomial in ``x, y, z``.

    ``coeffs`` is either a mapping ``(i, j) -> value`` or a full dense
    sequence in ``monomials(degree)`` order.
    """

    __slots__ = ("degree", "_coeffs", "_hash")

    def __init__(self, degree: int, coeffs=None):
        degree = int(degree)
        mons = monomials(degree)
        if coeffs is None:
            dense = (Fraction(0),) * len(mons)
        elif isinstance(coeffs, Mapping):
            pos = _positions(degree)
            buf = [Fraction(0)] * len(mons)
            for key, value in coeffs.items():
                i, j = key
                if (i, j) not in pos:
                    raise ValueError(f"monomial index {(i, j)} invalid for degree {degree}")
                buf[pos[(i, j)]] = as_rational(value)
            dense = tuple(buf)
        else:
            dense = tuple(as_rational(v) for v in coeffs)
            if len(dense) != len(mons):
                raise ValueError(
                    f"expected {len(mons)} coefficients for degree {degree}, got {len(dense)}"
                )
        self.degree = degree
        self._coeffs = dense
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, degree: int) -> "HomForm":
        return cls(degree)

    @classmethod
    def monomial(cls, i: int, j: int, degree: int, coeff=1) -> "HomForm":
        return cls(degree, {(i, j): coeff})

    @classmethod
    def linear(cls, a, b, c) -> "HomForm":
        """The linear form ``a*x + b*y + c*z``."""
        return cls(1, {(1, 0): a, (0, 1): b, (0, 0): c})

    # access

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def coeff(self, i: int, j: int) -> Fraction:
        pos = _positions(self.degree).get((i, j))
        return Fraction(0) if pos is None else self._coeffs[pos]

    def __getitem__(self, key: Monomial) -> Fraction:
        return self.coeff(*key)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Nonzero ``((i, j), coefficient)`` pairs in canonical order."""
        for m, c in zip(monomials(self.degree), self._coeffs):
            if c:
                yield m, c

    def support(self) -> frozenset:
        return frozenset(m for m, _ in self.items())

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic

    def _check_same_degree(self, other: "HomForm"):
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, HomForm):
            return NotImplemented
        self._check_same_degree(other)
        return HomForm(self.degree, [a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other):
        if not isinstance(other, HomForm):
            return NotImplemented
        self._check_same_degree(other)
        return HomForm(self.degree, [a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self):
        return HomForm(self.degree, [-a for a in self._coeffs])

    def scale(self, factor) -> "HomForm":
        factor = as_rational(factor)
        return HomForm(self.degree, [factor * a for a in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, HomForm):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "HomForm":
        if n < 0:
            raise ValueError("negative power")
        result = HomForm(0, [1])
        base = self
        while n:
            if n & 1:
                result = multiply(result, base)
            n >>= 1
            if n:
                base = multiply(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, HomForm):
            return NotImplemented
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, self._coeffs))
        return self._hash

    def is_proportional(self, other: "HomForm") -> bool:
        """True when one form is a rational multiple of the other (zero counts)."""
        if self.degree != other.degree:
            return False
        return rank([self._coeffs, other._coeffs]) < 2

    def __call__(self, x, y, z) -> Fraction:
        x, y, z = as_rational(x), as_rational(y), as_rational(z)
        d = self.degree
        return sum(
            (c * x**i * y**j * z ** (d - i - j) for (i, j), c in self.items()),
            Fraction(0),
        )

    # presentation

    def __str__(self) -> str:
        terms = []
        for (i, j), c in reversed(list(self.items())):
            k = self.degree - i - j
            factors = [
                v if e == 1 else f"{v}^{e}"
                for v, e in (("x", i), ("y", j), ("z", k))
                if e
            ]
            mon = "*".join(factors)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mon:
                body = str(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{mag}*{mon}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"HomForm({self.degree}, '{self}')"


def multiply(a: HomForm, b: HomForm) -> HomForm:
    """Exact product; the degree of the result is ``a.degree + b.degree``."""
    d = a.degree + b.degree
    pos = _positions(d)
    buf = [Fraction(0)] * len(monomials(d))
    right = list(b.items())
    for (i, j), c in a.items():
        for (k, l), e in right:
            buf[pos[(i + k, j + l)]] += c * e
    return HomForm(d, buf)


class LinearChange:
    """An invertible 3x3 rational matrix acting on ``(x, y, z)``.

    Row ``r`` gives the image of the ``r``-th coordinate: substituting ``M``
    into ``f`` yields ``f(M[0].v, M[1].v, M[2].v)`` for ``v = (x, y, z)``.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence]):
        rows = tuple(tuple(as_rational(v) for v in row) for row in matrix)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a coordinate change needs a 3x3 matrix")
        if det3(rows) == 0:
            raise ValueError("non-invertible coordinate change")
        self.matrix = rows

    @classmethod
    def identity(cls) -> "LinearChange":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "LinearChange":
        """Coordinate ``r`` is replaced by coordinate ``perm[r]``."""
        return cls([[int(c == perm[r]) for c in range(3)] for r in range(3)])

    @classmethod
    def diagonal(cls, a, b, c) -> "LinearChange":
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]])

    @property
    def determinant(self) -> Fraction:
        return det3(self.matrix)

    def __matmul__(self, other: "LinearChange") -> "LinearChange":
        m, n = self.matrix, other.matrix
        return LinearChange(
            [[sum(m[r][k] * n[k][c] for k in range(3)) for c in range(3)] for r in range(3)]
        )

    def apply(self, point: Sequence) -> Point:
        """The row vector ``point @ matrix``."""
        p = [as_rational(v) for v in point]
        return tuple(sum(p[k] * self.matrix[k][c] for k in range(3)) for c in range(3))

    def images(self) -> Tuple[HomForm, HomForm, HomForm]:
        """Linear forms replacing ``x, y, z``: the columns of the matrix."""
        return tuple(HomForm.linear(*(row[c] for row in self.matrix)) for c in range(3))

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self) -> str:
        return "LinearChange(" + "; ".join(" ".join(str(v) for v in r) for r in self.matrix) + ")"


def _powers(form: HomForm, n: int):
    out = [HomForm(0, [1])]
    for _ in range(n):
        out.append(multiply(out[-1], form))
    return out


def substitute(f: HomForm, m: LinearChange) -> HomForm:
    """Replace ``(x, y, z)`` by ``(x, y, z) @ m``; degree is preserved.

    So ``substitute(f, m)`` evaluated at ``v`` equals ``f(m.apply(v))`` and
    ``substitute(substitute(f, M), N) == substitute(f, N @ M)``.
    """
    if not isinstance(m, LinearChange):
        m = LinearChange(m)
    d = f.degree
    X, Y, Z = (_powers(v, d) for v in m.images())
    result = HomForm.zero(d)
    for (i, j), c in f.items():
        term = multiply(multiply(X[i], Y[j]), Z[d - i - j])
        result = result + term.scale(c)
    return result


def _sylvester_rank_deficiency(F: list, G: list, ys: Iterable[Fraction]) -> int:
    """``deg gcd`` of two polynomials in ``x`` whose coefficients are polynomials in ``y``.

    ``F[i]`` is the coefficient of ``x**i`` as a list of ``y``-coefficients;
    both leading coefficients are nonzero constants.  The generic rank of the
    Sylvester matrix is attained at all but finitely many ``y`` and the
    caller supplies more sample points than any nonzero maximal minor can
    have roots.
    """
    m, n = len(F) - 1, len(G) - 1
    size = m + n
    best = 0
    for y in ys:
        fv = [sum(c * y**e for e, c in enumerate(col)) for col in F]
        gv = [sum(c * y**e for e, c in enumerate(col)) for col in G]
        rows = []
        for s in range(n):
            row = [Fraction(0)] * size
            for i in range(m + 1):
                row[s + m - i] = fv[i]
            rows.append(row)
        for s in range(m):
            row = [Fraction(0)] * size
            for i in range(n + 1):
                row[s + n - i] = gv[i]
            rows.append(row)
        best = max(best, rank(rows))
        if best == size:
            break
    return size - best


def _x_coefficients(form: HomForm) -> list:
    """Dehomogenize at ``z = 1`` and group by powers of ``x``."""
    cols = [[Fraction(0)] * (form.degree + 1) for _ in range(form.degree + 1)]
    for (i, j), c in form.items():
        cols[i][j] = c
    return cols


def common_factor_degree(f: HomForm, g: HomForm) -> int:
    """Degree of ``gcd(f, g)``; 0 means the two curves meet in finitely many points."""
    if f.is_zero() or g.is_zero():
        raise ValueError("common factor of a zero form is undefined")
    if f.degree == 0 or g.degree == 0:
        return 0
    bound = f.degree + g.degree + 1
    # shear so that both forms have a nonzero x^d coefficient; then every
    # factor keeps its full degree in x after setting z = 1
    for b, c in product(range(bound), repeat=2):
        if f(1, b, c) != 0 and g(1, b, c) != 0:
            break
    shear = LinearChange([[1, b, c], [0, 1, 0], [0, 0, 1]])
    F = _x_coefficients(substitute(f, shear))
    G = _x_coefficients(substitute(g, shear))
    samples = (f.degree + g.degree) * max(f.degree, g.degree) + 1
    return _sylvester_rank_deficiency(F, G, (Fraction(t) for t in range(samples)))
