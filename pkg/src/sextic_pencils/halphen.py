"""Halphen pencils of index two, destabilizing certificates and table regression.

A Halphen pencil of index two is spanned by a sextic ``B`` and the double
cubic ``C^2``.  Certificates are searched over an explicit, finite list of
coordinate frames; failing to find one says nothing about stability.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .criterion import (
    VanishingPattern,
    Witness,
    check_pattern,
    derive_subdivision,
    format_witness,
    parse_patterns,
)
from .forms import HomForm, LinearChange, as_rational, common_factor_degree, substitute
from .normal_forms import match_catalog
from .parsing import parse_form
from .pluecker import Pencil

UNSTABLE = "UNSTABLE (certified)"
NOT_STABLE = "NOT STABLE (certified)"
NO_CERTIFICATE = "no destabilizing data found among tested frames"


@dataclass(frozen=True)
class HalphenPencil:
    B: HomForm
    C: HomForm
    pencil: Pencil
    common_factor: int

    @property
    def proper(self) -> bool:
        return self.common_factor == 0


def build_halphen(B: HomForm, C: HomForm) -> HalphenPencil:
    """The pencil spanned by ``B`` and ``C^2``, with properness attached."""
    if B.degree != 6:
        raise ValueError(f"B has degree {B.degree}, expected 6")
    if C.degree != 3:
        raise ValueError(f"C has degree {C.degree}, expected 3")
    if B.is_zero() or C.is_zero():
        raise ValueError("B and C must be nonzero")
    C2 = C * C
    if B.is_proportional(C2):
        raise ValueError("B is proportional to C^2; the generators are proportional")
    return HalphenPencil(B, C, Pencil(B, C2), common_factor_degree(B, C2))


def _frame_to(point) -> LinearChange:
    """A frame whose ``apply`` sends (0:0:1) to ``point``."""
    p = [as_rational(v) for v in point]
    if len(p) != 3 or not any(p):
        raise ValueError("a projective point needs three coordinates, not all zero")
    units = [[Fraction(int(i == k)) for i in range(3)] for k in range(3)]
    for a, b in itertools.combinations(range(3), 2):
        try:
            return LinearChange([units[a], units[b], p])
        except ValueError:
            continue
    raise AssertionError("unreachable: some pair of unit vectors completes a basis")


def multiplicity_at_point(f: HomForm, point) -> int:
    """Order of vanishing of ``f`` at a rational projective point."""
    if f.is_zero():
        raise ValueError("multiplicity of the zero form is undefined")
    moved = substitute(f, _frame_to(point))
    return min(i + j for (i, j), _ in moved.items())


# certificates


@dataclass(frozen=True)
class Certificate:
    frame: LinearChange
    frame_label: str
    a: Fraction
    strict: bool
    pattern_case: int
    witness: Witness

    @property
    def verdict(self) -> str:
        return "not-stable" if self.strict else "unstable"

    def pattern(self) -> VanishingPattern:
        return derive_subdivision(self.strict).case(self.pattern_case)

    def revalidate(self, p: Pencil) -> bool:
        return bool(check_pattern(p.transform(self.frame), self.pattern()))

    def to_dict(self) -> dict:
        return {
            "frame": self.frame_label,
            "matrix": [[str(v) for v in row] for row in self.frame.matrix],
            "a": str(self.a),
            "strict": self.strict,
            "case": self.pattern_case,
            "witness": format_witness(self.witness),
            "verdict": self.verdict,
        }


@dataclass
class VerdictReport:
    f: str
    g: str
    strict: bool
    frames_tested: int
    certificates: List[Certificate] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not self.certificates:
            return NO_CERTIFICATE
        return NOT_STABLE if self.strict else UNSTABLE

    @property
    def exit_code(self) -> int:
        if not self.certificates:
            return 20
        return 11 if self.strict else 10

    def to_dict(self) -> dict:
        return {
            "input": {"f": self.f, "g": self.g, "strict": self.strict},
            "frames_tested": self.frames_tested,
            "certificates": [c.to_dict() for c in self.certificates],
            "status": self.status,
        }

    def to_text(self) -> str:
        lines = [f"f = {self.f}", f"g = {self.g}"]
        mode = "strict (<)" if self.strict else "non-strict (<=)"
        lines.append(f"patterns: {mode}; frames tested: {self.frames_tested}")
        for c in self.certificates:
            lines.append(
                f"certificate: frame {c.frame_label} case {c.pattern_case} "
                f"a = {c.a} witness {format_witness(c.witness)}"
            )
        lines.append(self.status)
        return "\n".join(lines)


def standard_frames() -> List[Tuple[str, LinearChange]]:
    """The identity followed by the remaining coordinate permutations."""
    out = []
    for perm in itertools.permutations(range(3)):
        label = "identity" if perm == (0, 1, 2) else "perm" + "".join(map(str, perm))
        out.append((label, LinearChange.permutation(perm)))
    return out


def _frame_list(frames) -> List[Tuple[str, LinearChange]]:
    labelled = []
    for n, fr in enumerate(frames or (), 1):
        labelled.append(fr if isinstance(fr, tuple) else (f"user{n}", fr))
    seen, out = set(), []
    for label, fr in labelled + standard_frames():
        key = tuple(map(tuple, fr.matrix))
        if key not in seen:
            seen.add(key)
            out.append((label, fr))
    return out


def certify(
    p: Pencil,
    frames: Sequence = (),
    strict: bool = False,
    include_standard: bool = True,
) -> VerdictReport:
    """Check every minimal pattern in every frame; collect the hits.

    Frames are tried in the given order, then the identity and the
    coordinate permutations (duplicates dropped).  ``frames`` entries are
    :class:`LinearChange` objects or ``(label, LinearChange)`` pairs.
    """
    if include_standard:
        todo = _frame_list(frames)
    else:
        todo = [fr if isinstance(fr, tuple) else (f"user{n}", fr) for n, fr in enumerate(frames, 1)]
    if not todo:
        raise ValueError("no frames to test")
    patterns = derive_subdivision(strict).minimal_patterns
    report = VerdictReport(str(p.f), str(p.g), strict, len(todo))
    for label, fr in todo:
        moved = p.transform(fr)
        for n, pat in enumerate(patterns, 1):
            if check_pattern(moved, pat):
                report.certificates.append(
                    Certificate(fr, label, pat.representative(), strict, n, pat.witness)
                )
    return report


# example catalog


@dataclass(frozen=True)
class HalphenExample:
    name: str
    B_expr: Optional[str]
    C_expr: Optional[str]
    params: Mapping[str, Fraction]
    fiber_type: str
    expected_verdict: str
    expected_case: Optional[str]  # normal-form catalog id
    expected_pattern: Optional[int]  # minimal pattern number
    description: str = ""

    @property
    def available(self) -> bool:
        return self.B_expr is not None

    @property
    def strict(self) -> bool:
        return self.expected_verdict == "not-stable"

    def build(self, params: Optional[Mapping[str, Fraction]] = None) -> HalphenPencil:
        if not self.available:
            raise ValueError(f"{self.name}: coordinates unavailable in source paper")
        bindings = dict(self.params)
        bindings.update(params or {})
        return build_halphen(
            parse_form(self.B_expr, 6, bindings), parse_form(self.C_expr, 3, bindings)
        )


_A2 = {"a": Fraction(2)}
UNAVAILABLE = "coordinates unavailable in source paper"

EXAMPLES: Dict[str, HalphenExample] = {
    e.name: e
    for e in [
        HalphenExample(
            "prop4.14", "x^3*(x*z^2 - y^2*(y + x))", "x^2*y + x*z^2 - y^3 - x*y^2", {},
            "II*", "unstable", "Thm3.6-case4", 1, "triple line and a nodal cubic",
        ),
        HalphenExample(
            "prop4.15", "x^3*y^3", "z^2*x - y*(y - x)*(y - a*x)", _A2,
            "II*", "unstable", "Thm3.6-case5", 1, "two triple lines",
        ),
        HalphenExample(
            "prop4.16", "x^4*(y^2 + x*z)", "x*z^2 + y^2*z + x^3", {},
            "II*", "unstable", "Thm3.6-case2", 1, "conic and a tangent line of multiplicity four",
        ),
        HalphenExample(
            "prop4.17", "x^5*(x - z)", "y^2*z - x*(x - z)*(x - a*z)", _A2,
            "II*", "unstable", "Thm3.6-case1", 1, "line of multiplicity five and another line",
        ),
        HalphenExample(
            "prop4.19", None, None, {}, "III*", "not-stable", None, 3,
            "triple, double and simple line in general position",
        ),
        HalphenExample(
            "prop4.21", None, None, {}, "III*", "not-stable", None, None,
            "triple, double and simple line concurrent at a base point",
        ),
        HalphenExample(
            "prop4.22", None, None, {}, "III*", "not-stable", None, 3,
            "double line, nodal cubic and a line",
        ),
        HalphenExample(
            "prop4.23", None, None, {}, "III*", "not-stable", "Thm3.1-case1", 1,
            "contains a line of multiplicity four",
        ),
        HalphenExample(
            "prop4.24", None, None, {}, "III*", "not-stable", None, 4,
            "triple line and a nodal cubic",
        ),
        HalphenExample(
            "prop4.25", None, None, {}, "III*", "not-stable", None, 3,
            "triple line, a conic and a line",
        ),
        HalphenExample(
            "prop4.26", None, None, {}, "III*", "not-stable", None, None,
            "two triple lines",
        ),
    ]
}


@dataclass
class ExampleResult:
    example: HalphenExample
    params: Dict[str, Fraction]
    halphen: Optional[HalphenPencil] = None
    report: Optional[VerdictReport] = None
    matched: List[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def certified(self) -> bool:
        """The expected verdict is certified at the identity frame by the expected pattern."""
        if self.report is None:
            return False
        return any(
            c.frame_label == "identity"
            and (self.example.expected_pattern is None or c.pattern_case == self.example.expected_pattern)
            for c in self.report.certificates
        )

    @property
    def case_matched(self) -> bool:
        return self.example.expected_case is None or self.example.expected_case in self.matched

    @property
    def ok(self) -> bool:
        return self.skipped is None and self.certified and self.case_matched

    def to_dict(self) -> dict:
        out = {
            "name": self.example.name,
            "fiber_type": self.example.fiber_type,
            "params": {k: str(v) for k, v in self.params.items()},
        }
        if self.skipped:
            out["skipped"] = self.skipped
            return out
        out.update(
            B=self.example.B_expr,
            C=self.example.C_expr,
            proper=self.halphen.proper,
            report=self.report.to_dict(),
            expected_case=self.example.expected_case,
            matched_cases=self.matched,
            certified=self.certified,
            case_matched=self.case_matched,
        )
        return out

    def to_text(self) -> str:
        head = f"{self.example.name} [{self.example.fiber_type}] {self.example.description}"
        if self.skipped:
            return f"{head}\n  skipped: {self.skipped}"
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [head + (f" ({params})" if params else "")]
        lines.append(f"  B = {self.halphen.B}")
        lines.append(f"  C = {self.halphen.C}")
        lines.append(f"  proper: {'yes' if self.halphen.proper else 'no'}")
        cases = sorted({c.pattern_case for c in self.report.certificates if c.frame_label == "identity"})
        lines.append(f"  identity-frame pattern cases: {cases or 'none'}")
        lines.append(f"  status: {self.report.status}")
        lines.append(f"  matched normal forms: {', '.join(self.matched) or 'none'}")
        if self.example.expected_case:
            mark = "yes" if self.case_matched else "NO"
            lines.append(f"  expected normal form {self.example.expected_case}: {mark}")
        return "\n".join(lines)


def run_example(name: str, params: Optional[Mapping[str, Fraction]] = None) -> ExampleResult:
    try:
        ex = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}") from None
    bindings = dict(ex.params)
    bindings.update({k: as_rational(v) for k, v in (params or {}).items()})
    result = ExampleResult(ex, bindings)
    if not ex.available:
        result.skipped = UNAVAILABLE
        return result
    result.halphen = ex.build(bindings)
    # the example coordinates are already normalized; test only the identity
    result.report = certify(
        result.halphen.pencil,
        [("identity", LinearChange.identity())],
        strict=ex.strict,
        include_standard=False,
    )
    result.matched = match_catalog(result.halphen.pencil)
    return result


def run_catalog(name: str = "all", params: Optional[Mapping[str, Fraction]] = None) -> List[ExampleResult]:
    names = list(EXAMPLES) if name == "all" else [name]
    return [run_example(n, params) for n in names]


# printed-table regression


@dataclass
class TableDiff:
    strict: bool
    added: Dict[int, Tuple[Tuple[int, int], ...]]  # regenerated but not printed
    removed: Dict[int, Tuple[Tuple[int, int], ...]]  # printed but not regenerated
    witness_mismatch: Dict[int, Tuple[str, str]]
    count_mismatch: Optional[Tuple[int, int]] = None


# the printed non-stable lists leave out (2,2), whose weight is negative on all of [-1/2, 1]
KNOWN_ADDITIONS = {True: ((2, 2),), False: ()}


@dataclass
class TablesReport:
    tables: List[TableDiff]

    def known(self) -> List[str]:
        out = []
        for t in self.tables:
            for n, extra in sorted(t.added.items()):
                if extra and set(extra) <= set(KNOWN_ADDITIONS[t.strict]):
                    kind = "strict" if t.strict else "nonstrict"
                    out.append(f"{kind} case {n}: +" + " +".join(f"({r},{s})" for r, s in extra))
        return out

    def unexpected(self) -> List[str]:
        out = []
        for t in self.tables:
            kind = "strict" if t.strict else "nonstrict"
            if t.count_mismatch:
                out.append(f"{kind}: {t.count_mismatch[0]} regenerated cases, {t.count_mismatch[1]} printed")
            for n, extra in sorted(t.added.items()):
                rest = [c for c in extra if c not in KNOWN_ADDITIONS[t.strict]]
                if rest:
                    out.append(f"{kind} case {n}: +" + " +".join(f"({r},{s})" for r, s in rest))
            for n, miss in sorted(t.removed.items()):
                if miss:
                    out.append(f"{kind} case {n}: -" + " -".join(f"({r},{s})" for r, s in miss))
            for n, (got, want) in sorted(t.witness_mismatch.items()):
                out.append(f"{kind} case {n}: witness {got} (printed {want})")
        return out

    @property
    def ok(self) -> bool:
        return not self.unexpected()

    def to_text(self) -> str:
        lines = []
        for t in self.tables:
            kind = "strict" if t.strict else "nonstrict"
            w = ", ".join(
                format_witness(p.witness) for p in derive_subdivision(t.strict).minimal_patterns
            )
            lines.append(f"{kind} witnesses: {w}")
        lines.append("known-discrepancy:")
        lines.extend("  " + s for s in self.known() or ["none"])
        lines.append("unexpected:")
        lines.extend("  " + s for s in self.unexpected() or ["none"])
        lines.append("tables OK" if self.ok else "tables DIFFER")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"known_discrepancy": self.known(), "unexpected": self.unexpected(), "ok": self.ok}


def printed_tables(strict: bool) -> List[Tuple[int, VanishingPattern]]:
    name = "printed_notstable.txt" if strict else "printed_unstable.txt"
    text = resources.files("sextic_pencils").joinpath("data/" + name).read_text()
    return parse_patterns(text)


def _diff(strict: bool) -> TableDiff:
    derived = derive_subdivision(strict).minimal_patterns
    printed = printed_tables(strict)
    diff = TableDiff(strict, {}, {}, {})
    if len(derived) != len(printed):
        diff.count_mismatch = (len(derived), len(printed))
    for (n, want), got in zip(printed, derived):
        diff.added[n] = tuple(sorted(got.pairs - want.pairs))
        diff.removed[n] = tuple(sorted(want.pairs - got.pairs))
        if got.witness != want.witness:
            diff.witness_mismatch[n] = (format_witness(got.witness), format_witness(want.witness))
    return diff


def paper_tables_regression() -> TablesReport:
    """Regenerated minimal patterns and witnesses against the printed tables."""
    return TablesReport([_diff(False), _diff(True)])
