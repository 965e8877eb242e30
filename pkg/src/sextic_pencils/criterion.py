"""Critical values of the normalized weight and the vanishing patterns they induce.

Minors are grouped into the 91 classes ``(r, s) = (i + k, j + l)``.  For a
normalized weight ``a`` the class weight is ``2r + s - 12 + a (2s + r - 12)``;
a pencil is destabilized by ``a`` in a frame when every minor in every class
of non-positive (unstable) or negative (not stable) weight vanishes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from .forms import as_rational, integral_coefficients
from .pluecker import QUADRUPLES, SEXTIC_MONOMIALS, Pencil, Quadruple, pair_class

PairClass = Tuple[int, int]
Interval = Tuple[Fraction, Fraction]
Witness = Union[Fraction, Interval]

LOWER = Fraction(-1, 2)
UPPER = Fraction(1)

# preferred interior rationals for the open cells; any interior point works
CELL_REPRESENTATIVES: Tuple[Fraction, ...] = tuple(
    Fraction(v) for v in ("-13/42", "-8/35", "-1/12", "3/14", "3/10", "3/4")
)

PAIR_CLASSES: Tuple[PairClass, ...] = tuple(
    (r, s) for r in range(13) for s in range(13) if r + s <= 12
)


def class_weight(c: PairClass, a) -> Fraction:
    r, s = c
    return 2 * r + s - 12 + as_rational(a) * (2 * s + r - 12)


def _check_range(a: Fraction):
    if not LOWER <= a <= UPPER:
        raise ValueError(f"a={a} outside [-1/2, 1]")


def _pairs_at(a: Fraction, strict: bool) -> FrozenSet[PairClass]:
    if strict:
        return frozenset(c for c in PAIR_CLASSES if class_weight(c, a) < 0)
    return frozenset(c for c in PAIR_CLASSES if class_weight(c, a) <= 0)


@dataclass(frozen=True)
class VanishingPattern:
    """Classes whose minors must all vanish, with the weight region exhibiting them.

    ``witness`` is a single rational or an open interval ``(lo, hi)``.
    """

    pairs: FrozenSet[PairClass]
    strict: bool
    witness: Witness

    def __contains__(self, c) -> bool:
        return tuple(c) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def verdict(self) -> str:
        return "not-stable" if self.strict else "unstable"

    def representative(self) -> Fraction:
        """A rational weight at which the pattern is exactly realized."""
        if isinstance(self.witness, tuple):
            lo, hi = self.witness
            for a in CELL_REPRESENTATIVES:
                if lo < a < hi:
                    return a
            return (lo + hi) / 2
        return self.witness

    def quadruples(self) -> List[Quadruple]:
        return [q for q in QUADRUPLES if pair_class(q) in self.pairs]

    def sorted_pairs(self) -> List[PairClass]:
        return sorted(self.pairs)


def pattern_at(a, strict: bool = False) -> VanishingPattern:
    """The exact set of classes with weight ``<= 0`` (or ``< 0`` if ``strict``) at ``a``."""
    a = as_rational(a)
    _check_range(a)
    return VanishingPattern(_pairs_at(a, strict), strict, a)


@lru_cache(maxsize=None)
def critical_values() -> Tuple[Fraction, ...]:
    """Every root in ``[-1/2, 1]`` of some class weight, plus both endpoints, sorted."""
    roots = {LOWER, UPPER}
    for r, s in PAIR_CLASSES:
        slope = 2 * s + r - 12
        if slope:
            root = Fraction(-(2 * r + s - 12), slope)
            if LOWER <= root <= UPPER:
                roots.add(root)
    return tuple(sorted(roots))


@dataclass(frozen=True)
class CriticalSubdivision:
    breakpoints: Tuple[Fraction, ...]
    strict: bool
    minimal_patterns: Tuple[VanishingPattern, ...]

    def case(self, n: int) -> VanishingPattern:
        """Minimal pattern number ``n`` (1-based, ordered by witness)."""
        if not 1 <= n <= len(self.minimal_patterns):
            raise KeyError(f"no case {n}; there are {len(self.minimal_patterns)}")
        return self.minimal_patterns[n - 1]

    def witnesses(self) -> List[Witness]:
        return [p.witness for p in self.minimal_patterns]


def _witness_key(w: Witness) -> Fraction:
    return w[0] if isinstance(w, tuple) else w


@lru_cache(maxsize=None)
def derive_subdivision(strict: bool = False) -> CriticalSubdivision:
    """Inclusion-minimal patterns over all breakpoints and open cells."""
    bps = critical_values()
    regions: List[Tuple[Witness, FrozenSet[PairClass]]] = []
    for n, a in enumerate(bps):
        regions.append((a, _pairs_at(a, strict)))
        if n + 1 < len(bps):
            cell = (a, bps[n + 1])
            regions.append((cell, _pairs_at((cell[0] + cell[1]) / 2, strict)))
    seen = {}
    for witness, pairs in regions:
        seen.setdefault(pairs, witness)
    minimal = [
        VanishingPattern(pairs, strict, witness)
        for pairs, witness in seen.items()
        if not any(other < pairs for other in seen)
    ]
    minimal.sort(key=lambda p: _witness_key(p.witness))
    return CriticalSubdivision(bps, strict, tuple(minimal))


def minimal_pattern(strict: bool, case: int) -> VanishingPattern:
    return derive_subdivision(strict).case(case)


@dataclass(frozen=True)
class PatternCheck:
    satisfied: bool
    violating_minor: Optional[Quadruple] = None

    def __bool__(self) -> bool:
        return self.satisfied


def check_pattern(p: Pencil, pat) -> PatternCheck:
    """Does every minor in the pattern's classes vanish?

    ``pat`` is a :class:`VanishingPattern` or any collection of classes.
    On failure the first nonzero offending minor in canonical order is
    returned.
    """
    pairs = pat.pairs if isinstance(pat, VanishingPattern) else frozenset(map(tuple, pat))
    # scaling by common denominators keeps zero minors zero
    f = dict(zip(SEXTIC_MONOMIALS, integral_coefficients(p.f.coeffs)[0]))
    g = dict(zip(SEXTIC_MONOMIALS, integral_coefficients(p.g.coeffs)[0]))
    for q in QUADRUPLES:
        if pair_class(q) not in pairs:
            continue
        a, b = q[:2], q[2:]
        if f[a] * g[b] != f[b] * g[a]:
            return PatternCheck(False, q)
    return PatternCheck(True)


# Fixture format:
#   case <n> strict|nonstrict witness <a or (lo,hi)>
#   r,s r,s ...
# blocks separated by blank lines.


def format_witness(w: Witness) -> str:
    if isinstance(w, tuple):
        return f"({w[0]},{w[1]})"
    return str(w)


def parse_witness(text: str) -> Witness:
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise ValueError(f"malformed interval witness {text!r}")
        lo, hi = text[1:-1].split(",")
        return Fraction(lo.strip()), Fraction(hi.strip())
    return Fraction(text)


def format_patterns(patterns: Sequence[VanishingPattern], per_line: int = 10) -> str:
    blocks = []
    for n, pat in enumerate(patterns, 1):
        kind = "strict" if pat.strict else "nonstrict"
        lines = [f"case {n} {kind} witness {format_witness(pat.witness)}"]
        pairs = [f"{r},{s}" for r, s in pat.sorted_pairs()]
        for k in range(0, len(pairs), per_line):
            lines.append(" ".join(pairs[k:k + per_line]))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


_HEADER = re.compile(r"^case\s+(\d+)\s+(strict|nonstrict)\s+witness\s+(.+)$")


def parse_patterns(text: str) -> List[Tuple[int, VanishingPattern]]:
    """Read the fixture format back into ``(case number, pattern)`` pairs."""
    out = []
    header = None
    pairs: List[PairClass] = []

    def flush():
        if header is not None:
            n, strict, witness = header
            out.append((n, VanishingPattern(frozenset(pairs), strict, witness)))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            flush()
            header = (int(m.group(1)), m.group(2) == "strict", parse_witness(m.group(3)))
            pairs = []
            continue
        if header is None:
            raise ValueError(f"line {lineno}: pairs before any case header")
        for tok in line.split():
            r, s = tok.split(",")
            pairs.append((int(r), int(s)))
    flush()
    return out
