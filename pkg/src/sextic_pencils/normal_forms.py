"""From minor-vanishing patterns to equations for the generators.

The case splitter walks the equations ``m[i,j,k,l] = 0`` of a pattern in
canonical order and, for an equation that the current constraints do not
already satisfy, branches on the lesser index ``q = (i, j)``:

(a) ``f_q = g_q = 0``;
(b) ``g_q != 0``: replace ``f`` by ``f - (f_q / g_q) g`` so ``f_q = 0``; from
    then on every equation pairing ``q`` with ``p`` forces ``f_p = 0``;
(c) the mirror of (b) with the roles of ``f`` and ``g`` exchanged.

Equations with a single surviving product ``f_q g_p`` split into ``f_q = 0``
or ``g_p = 0``.  When no basis normalization is admissible the equation is
kept as a residual bilinear condition.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .criterion import VanishingPattern, check_pattern, derive_subdivision
from .forms import HomForm, Monomial
from .linalg import nullspace
from .pluecker import (
    QUADRUPLES,
    SEXTIC_MONOMIALS,
    Pencil,
    Quadruple,
    is_quadruple,
    pair_class,
)

ALL_INDICES: FrozenSet[Monomial] = frozenset(SEXTIC_MONOMIALS)


def _pairs_of(pat) -> FrozenSet[Tuple[int, int]]:
    if isinstance(pat, VanishingPattern):
        return pat.pairs
    return frozenset(tuple(c) for c in pat)


def enumerate_quadruples(pat) -> List[Quadruple]:
    """Canonical quadruples whose class lies in the pattern, lexicographically sorted."""
    pairs = _pairs_of(pat)
    return [q for q in QUADRUPLES if pair_class(q) in pairs]


@dataclass(frozen=True)
class ConstraintState:
    zero_f: FrozenSet[Monomial] = frozenset()
    zero_g: FrozenSet[Monomial] = frozenset()
    nonzero_f: FrozenSet[Monomial] = frozenset()
    nonzero_g: FrozenSet[Monomial] = frozenset()
    # f was reduced against g at this index (g nonzero there, f zero)
    pivot_g: Optional[Monomial] = None
    # g was reduced against f at this index
    pivot_f: Optional[Monomial] = None
    residual_minors: Tuple[Quadruple, ...] = ()

    def zero(self, side: str, q: Monomial) -> bool:
        return q in (self.zero_f if side == "f" else self.zero_g)

    def with_zero(self, side: str, q: Monomial) -> Optional["ConstraintState"]:
        if side == "f":
            return None if q in self.nonzero_f else replace(self, zero_f=self.zero_f | {q})
        return None if q in self.nonzero_g else replace(self, zero_g=self.zero_g | {q})

    def with_nonzero(self, side: str, q: Monomial) -> Optional["ConstraintState"]:
        if side == "f":
            return None if q in self.zero_f else replace(self, nonzero_f=self.nonzero_f | {q})
        return None if q in self.zero_g else replace(self, nonzero_g=self.nonzero_g | {q})

    def can_reduce_f(self) -> bool:
        # f - c*g must keep every constraint already placed on f
        return self.pivot_g is None and (self.zero_f | self.nonzero_f) <= self.zero_g

    def can_reduce_g(self) -> bool:
        return self.pivot_f is None and (self.zero_g | self.nonzero_g) <= self.zero_f

    def swapped(self) -> "ConstraintState":
        return ConstraintState(
            self.zero_g, self.zero_f, self.nonzero_g, self.nonzero_f,
            self.pivot_f, self.pivot_g, self.residual_minors,
        )

    def minor_is_trivial(self, q: Quadruple) -> bool:
        a, b = q[:2], q[2:]
        return (self.zero("f", a) or self.zero("g", b)) and (
            self.zero("f", b) or self.zero("g", a)
        )

    def subsumes(self, other: "ConstraintState") -> bool:
        """Every closed constraint of ``self`` is also one of ``other``.

        Nonzero markers only guard branches; they are ignored here because
        the vanishing conditions are closed and survive taking closures.
        """
        return (
            self.zero_f <= other.zero_f
            and self.zero_g <= other.zero_g
            and set(self.residual_minors) <= set(other.residual_minors)
        )


def _finish(state: ConstraintState) -> ConstraintState:
    residual = tuple(q for q in state.residual_minors if not state.minor_is_trivial(q))
    return replace(state, residual_minors=residual)


def _split(equations: Sequence[Quadruple]) -> List[ConstraintState]:
    leaves: List[ConstraintState] = []
    # explicit stack keeps the traversal depth-first in equation order
    stack: List[Tuple[Optional[ConstraintState], int]] = [(ConstraintState(), 0)]
    while stack:
        state, n = stack.pop()
        if state is None:
            continue
        if n == len(equations):
            leaves.append(_finish(state))
            continue
        eq = equations[n]
        q, p = eq[:2], eq[2:]
        first_zero = state.zero("f", q) or state.zero("g", p)    # f_q g_p
        second_zero = state.zero("f", p) or state.zero("g", q)   # f_p g_q
        if first_zero and second_zero:
            stack.append((state, n + 1))
            continue
        if state.pivot_g in (q, p):
            other = p if state.pivot_g == q else q
            stack.append((state.with_zero("f", other), n + 1))
            continue
        if state.pivot_f in (q, p):
            other = p if state.pivot_f == q else q
            stack.append((state.with_zero("g", other), n + 1))
            continue
        branches: List[Optional[ConstraintState]] = []
        if second_zero:
            # f_q * g_p = 0
            branches.append(state.with_zero("f", q))
            s = state.with_nonzero("f", q)
            branches.append(s and s.with_zero("g", p))
        elif first_zero:
            # f_p * g_q = 0
            branches.append(state.with_zero("g", q))
            s = state.with_nonzero("g", q)
            branches.append(s and s.with_zero("f", p))
        else:
            reduce_f = state.can_reduce_f() and not state.zero("g", q)
            reduce_g = state.can_reduce_g() and not state.zero("f", q)
            if not (reduce_f or reduce_g):
                stack.append((replace(state, residual_minors=state.residual_minors + (eq,)), n + 1))
                continue
            s = state.with_zero("f", q)
            branches.append(s and s.with_zero("g", q))
            if reduce_f:
                s = state.with_nonzero("g", q)
                s = s and s.with_zero("f", q)
                s = s and replace(s, pivot_g=q)
                branches.append(s and s.with_zero("f", p))
            if reduce_g:
                s = state.with_nonzero("f", q)
                s = s and s.with_zero("g", q)
                s = s and replace(s, pivot_f=q)
                branches.append(s and s.with_zero("g", p))
        for b in reversed(branches):
            stack.append((b, n + 1))
    return leaves


def merge_leaves(
    leaves: Iterable[ConstraintState], identify_swap: bool = False
) -> List[ConstraintState]:
    """Drop every leaf subsumed by another (optionally up to exchanging f and g)."""

    def covers(a: ConstraintState, b: ConstraintState) -> bool:
        return a.subsumes(b) or (identify_swap and a.swapped().subsumes(b))

    kept: List[ConstraintState] = []
    for leaf in leaves:
        if any(covers(k, leaf) for k in kept):
            continue
        kept = [k for k in kept if not covers(leaf, k)]
        kept.append(leaf)
    return kept


@lru_cache(maxsize=64)
def _case_split(pairs: FrozenSet[Tuple[int, int]]) -> Tuple[ConstraintState, ...]:
    return tuple(merge_leaves(_split(enumerate_quadruples(pairs))))


def case_split(pat) -> List[ConstraintState]:
    """Leaves of the case split for ``pat``, merged by subsumption.

    A leaf and its f/g mirror image are both kept; see :func:`normal_forms`.
    """
    return list(_case_split(_pairs_of(pat)))


def normal_forms(pat) -> List[ConstraintState]:
    """Case-split leaves merged up to exchanging the two generators."""
    return merge_leaves(case_split(pat), identify_swap=True)


# catalog of normal forms


@dataclass(frozen=True)
class NormalFormCase:
    id: str
    verdict: str  # "unstable" or "not-stable"
    f_support: FrozenSet[Monomial]
    f_nonzero: FrozenSet[Monomial] = frozenset()
    g_zero: FrozenSet[Monomial] = frozenset()
    residual_minors: Tuple[Quadruple, ...] = ()
    # (strict, case number) of the minimal pattern the case realizes
    pattern: Optional[Tuple[bool, int]] = None
    # "iff" cases are sufficient; "necessary" cases only constrain
    kind: str = "iff"
    note: str = ""

    def __post_init__(self):
        if self.verdict not in ("unstable", "not-stable"):
            raise ValueError(f"{self.id}: unknown verdict {self.verdict!r}")
        for idx in self.f_support | self.f_nonzero | self.g_zero:
            if idx not in ALL_INDICES:
                raise ValueError(f"{self.id}: invalid monomial index {idx}")
        if not self.f_nonzero <= self.f_support:
            raise ValueError(f"{self.id}: nonzero markers outside the support of f")
        for q in self.residual_minors:
            if not is_quadruple(q):
                raise ValueError(f"{self.id}: invalid residual quadruple {q}")

    @property
    def strict(self) -> bool:
        return self.verdict == "not-stable"

    @property
    def f_zero(self) -> FrozenSet[Monomial]:
        return ALL_INDICES - self.f_support

    def target_patterns(self) -> List[Tuple[int, VanishingPattern]]:
        sub = derive_subdivision(self.strict)
        if self.pattern is not None:
            strict, n = self.pattern
            return [(n, derive_subdivision(strict).case(n))]
        return list(enumerate(sub.minimal_patterns, 1))

    @classmethod
    def from_leaf(cls, leaf: ConstraintState, id: str, verdict: str) -> "NormalFormCase":
        return cls(
            id=id,
            verdict=verdict,
            f_support=ALL_INDICES - leaf.zero_f,
            f_nonzero=leaf.nonzero_f - leaf.zero_f,
            g_zero=leaf.zero_g,
            residual_minors=leaf.residual_minors,
        )


def _fmt_idx(items: Iterable[Monomial], marked: FrozenSet[Monomial] = frozenset()) -> str:
    return " ".join(f"{i},{j}" + ("!" if (i, j) in marked else "") for i, j in sorted(items))


def format_catalog(cases: Sequence[NormalFormCase]) -> str:
    blocks = []
    for c in cases:
        lines = [f"{c.id} {c.verdict}"]
        if c.kind != "iff":
            lines.append(f"KIND: {c.kind}")
        if c.pattern is not None:
            lines.append(f"PATTERN: {'strict' if c.pattern[0] else 'nonstrict'} {c.pattern[1]}")
        lines.append(("F: " + _fmt_idx(c.f_support, c.f_nonzero)).rstrip())
        lines.append(("G0: " + _fmt_idx(c.g_zero)).rstrip())
        lines.append(("RM: " + " ".join(",".join(map(str, q)) for q in c.residual_minors)).rstrip())
        if c.note:
            lines.append(f"NOTE: {c.note}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


_ID_LINE = re.compile(r"^(\S+)\s+(unstable|not-stable)$")


def parse_catalog(text: str) -> List[NormalFormCase]:
    """Parse the block format written by :func:`format_catalog`."""
    cases = []
    current: Dict = {}

    def flush():
        if current:
            cases.append(NormalFormCase(**current))
            current.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _ID_LINE.match(line)
        if m:
            flush()
            current.update(id=m.group(1), verdict=m.group(2), f_support=frozenset())
            continue
        if not current:
            raise ValueError(f"line {lineno}: field before any case id")
        key, _, value = line.partition(":")
        tokens = value.split()
        if key == "F":
            support, marked = set(), set()
            for tok in tokens:
                idx = tuple(int(v) for v in tok.rstrip("!").split(","))
                support.add(idx)
                if tok.endswith("!"):
                    marked.add(idx)
            current.update(f_support=frozenset(support), f_nonzero=frozenset(marked))
        elif key == "G0":
            current["g_zero"] = frozenset(tuple(int(v) for v in t.split(",")) for t in tokens)
        elif key == "RM":
            current["residual_minors"] = tuple(
                tuple(int(v) for v in t.split(",")) for t in tokens
            )
        elif key == "PATTERN":
            current["pattern"] = (tokens[0] == "strict", int(tokens[1]))
        elif key == "KIND":
            current["kind"] = tokens[0]
        elif key == "NOTE":
            current["note"] = value.strip()
        else:
            raise ValueError(f"line {lineno}: unknown field {key!r}")
    flush()
    return cases


_CATALOG: Optional[Dict[str, NormalFormCase]] = None


def load_catalog() -> Dict[str, NormalFormCase]:
    """The shipped catalog, keyed by case id, in file order."""
    global _CATALOG
    if _CATALOG is None:
        text = resources.files("sextic_pencils").joinpath("data/normal_forms.txt").read_text()
        _CATALOG = {c.id: c for c in parse_catalog(text)}
    return _CATALOG


def get_case(case_id: str) -> NormalFormCase:
    try:
        return load_catalog()[case_id]
    except KeyError:
        raise KeyError(f"unknown normal form case {case_id!r}") from None


# forward verification


def _random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if v or not nonzero:
            return v


def sample_pencil(case: NormalFormCase, rng: random.Random, attempts: int = 5) -> Optional[Pencil]:
    """A random pencil in the normal form, or ``None`` if the constraints
    could not be met (residual minors admitting no independent ``g``)."""
    for _ in range(attempts):
        f = HomForm(6, {
            idx: _random_rational(rng, nonzero=idx in case.f_nonzero)
            for idx in case.f_support
        })
        if f.is_zero():
            continue
        free = [idx for idx in SEXTIC_MONOMIALS if idx not in case.g_zero]
        cols = {idx: n for n, idx in enumerate(free)}
        rows = []
        for i, j, k, l in case.residual_minors:
            # f_ij g_kl - f_kl g_ij = 0 is linear in g
            row = [Fraction(0)] * len(free)
            if (k, l) in cols:
                row[cols[(k, l)]] += f.coeff(i, j)
            if (i, j) in cols:
                row[cols[(i, j)]] -= f.coeff(k, l)
            if any(row):
                rows.append(row)
        if rows:
            basis = nullspace(rows, len(free))
            if not basis:
                return None
            vec = [Fraction(0)] * len(free)
            for b in basis:
                c = _random_rational(rng)
                vec = [x + c * y for x, y in zip(vec, b)]
        else:
            vec = [_random_rational(rng) for _ in free]
        g = {idx: vec[n] for idx, n in cols.items()}
        g = HomForm(6, g)
        if g.is_zero() or f.is_proportional(g):
            continue
        return Pencil(f, g)
    return None


@dataclass
class ForwardReport:
    case_id: str
    trials: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexample: Optional[Pencil] = None
    # patterns satisfied by every passing sample
    patterns: Optional[FrozenSet[int]] = None

    @property
    def solvable(self) -> int:
        return self.trials - self.skipped

    @property
    def skip_rate(self) -> Fraction:
        return Fraction(self.skipped, self.trials)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0


def verify_forward(case, trials: int = 100, seed: int = 0) -> ForwardReport:
    """Sample pencils in the normal form and check them against the pattern(s).

    A sample passes when it satisfies the case's recorded pattern, or any
    minimal pattern of the case's strictness when none is recorded.
    """
    if isinstance(case, str):
        case = get_case(case)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = ForwardReport(case.id, trials)
    targets = case.target_patterns()
    for _ in range(trials):
        pencil = sample_pencil(case, rng)
        if pencil is None:
            report.skipped += 1
            continue
        hits = frozenset(n for n, pat in targets if check_pattern(pencil, pat))
        if hits:
            report.passed += 1
            report.patterns = hits if report.patterns is None else report.patterns & hits
        else:
            report.failed += 1
            if report.counterexample is None:
                report.counterexample = pencil
    return report


# matching


def _pencil_kernel(f: HomForm, g: HomForm, indices: Iterable[Monomial]) -> List[List[Fraction]]:
    """Basis of ``{(s, t) : (s f + t g)_idx = 0 for every idx}``."""
    rows = [[f.coeff(*idx), g.coeff(*idx)] for idx in indices]
    rows = [r for r in rows if any(r)]
    return nullspace(rows, 2)


def _independent(u, v) -> bool:
    return u[0] * v[1] - u[1] * v[0] != 0


@dataclass(frozen=True)
class CaseMatch:
    case_id: str
    f: HomForm
    g: HomForm


def match_case(p: Pencil, case: NormalFormCase) -> Optional[CaseMatch]:
    """Find generators of ``p`` realizing ``case`` in the current coordinates.

    Searches all bases of the pencil exactly: the admissible first and
    second generators form linear subspaces of the two-dimensional space of
    coefficient pairs ``(s, t)``.
    """
    for q in case.residual_minors:
        if p.pluecker()[q]:
            return None
    f, g = p.f, p.g
    first = _pencil_kernel(f, g, case.f_zero)
    second = _pencil_kernel(f, g, case.g_zero)
    if not first or not second:
        return None
    markers = sorted(case.f_nonzero)

    def marked_ok(v) -> bool:
        return all(v[0] * f.coeff(*m) + v[1] * g.coeff(*m) != 0 for m in markers)

    # each marker or proportionality excludes at most one direction
    if len(first) == 2:
        candidates = [(Fraction(0), Fraction(1))] + [
            (Fraction(1), Fraction(t)) for t in range(len(markers) + 3)
        ]
    else:
        candidates = [tuple(first[0])]
    seconds = [tuple(v) for v in second] if len(second) == 1 else [
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    ]
    for u in candidates:
        if not marked_ok(u):
            continue
        for v in seconds:
            if _independent(u, v):
                return CaseMatch(
                    case.id,
                    f.scale(u[0]) + g.scale(u[1]),
                    f.scale(v[0]) + g.scale(v[1]),
                )
    return None


def match_catalog(p: Pencil, cases: Optional[Iterable[NormalFormCase]] = None) -> List[str]:
    """Ids of every catalog case the pencil realizes in its given coordinates."""
    if cases is None:
        cases = load_catalog().values()
    return [c.id for c in cases if match_case(p, c) is not None]
